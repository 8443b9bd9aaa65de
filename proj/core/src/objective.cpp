#include "ssnmf/objective.hpp"

#include <sstream>

namespace ssnmf {
namespace {

void require_shapes(const CoClusterMatrix& p, const Matrix& w, const char* op) {
  if (w.rows() != p.n()) {
    std::ostringstream msg;
    msg << op << ": P is " << p.n() << "x" << p.n() << " but W has " << w.rows() << " rows";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

}  // namespace

double objective_value(const CoClusterMatrix& p, const Matrix& w) {
  require_shapes(p, w, "objective_value");
  const Matrix& pe = p.entries();
  const Index n = p.n();
  Vector row(n);
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    row.noalias() = w * w.row(i).transpose();
    for (Index j = 0; j < n; ++j) {
      const double r = pe(i, j) - row[j];
      sum += r * r;
    }
  }
  return 0.25 * sum;
}

GradientMatrix gradient(const CoClusterMatrix& p, const Matrix& w) {
  require_shapes(p, w, "gradient");
  const Matrix gram = w.transpose() * w;
  GradientMatrix g = w * gram;
  g.noalias() -= p.entries() * w;
  return g;
}

Evaluation evaluate(const CoClusterMatrix& p, const Matrix& w) {
  return {objective_value(p, w), gradient(p, w)};
}

double fw_gap(const GradientMatrix& g, const Matrix& w, const VertexMatrix& s) {
  if (g.rows() != w.rows() || g.cols() != w.cols() || s.n() != w.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "fw_gap: G, W and S shapes disagree");
  }
  double gap = 0.0;
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index j = 0; j < g.cols(); ++j) gap += g(i, j) * w(i, j);
  }
  for (Index i = 0; i < g.rows(); ++i) {
    const Index j = s.row_indices[static_cast<std::size_t>(i)];
    if (j < 0 || j >= g.cols()) throw Error(ErrorCode::IndexOutOfRange, "fw_gap: vertex column out of range");
    gap -= g(i, j);
  }
  return gap;
}

Matrix hessian_vector_product(const CoClusterMatrix& p, const Matrix& w, const Matrix& v) {
  require_shapes(p, w, "hessian_vector_product");
  if (v.rows() != w.rows() || v.cols() != w.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "hessian_vector_product: V must match W's shape");
  }
  const Matrix gram = w.transpose() * w;    // k x k
  const Matrix wt_v = w.transpose() * v;    // k x k
  const Matrix vt_w = v.transpose() * w;    // k x k
  Matrix h = v * gram;
  h.noalias() += w * wt_v;
  h.noalias() -= p.entries() * v;
  h.noalias() += w * vt_w;
  return h;
}

}  // namespace ssnmf
