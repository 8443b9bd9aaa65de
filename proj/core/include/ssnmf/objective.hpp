// f(W) = 1/4 ||P - W W^T||_F^2 with its gradient, Frank-Wolfe gap and
// matrix-free Hessian action.

#ifndef SSNMF_OBJECTIVE_HPP
#define SSNMF_OBJECTIVE_HPP

#include "ssnmf/types.hpp"

namespace ssnmf {

/// Same shape as the factor it was computed from.
using GradientMatrix = Matrix;

/// 1/4 sum_ij (P_ij - (W W^T)_ij)^2, streamed one row of W W^T at a time.
/// W need not be feasible.
double objective_value(const CoClusterMatrix& p, const Matrix& w);

/// (W W^T - P) W evaluated as W (W^T W) - P W.
GradientMatrix gradient(const CoClusterMatrix& p, const Matrix& w);

struct Evaluation {
  double objective = 0.0;
  GradientMatrix gradient;
};

Evaluation evaluate(const CoClusterMatrix& p, const Matrix& w);

/// <G, W - S>. Equals the Frank-Wolfe gap when S is the LMO output for G.
double fw_gap(const GradientMatrix& g, const Matrix& w, const VertexMatrix& s);

/// Action of the nk x nk Hessian on V:
///   H(V) = V (W^T W) + (W W^T - P) V + W V^T W.
/// The last term is the commutation-matrix part; nothing of size nk x nk or
/// n x n (beyond P itself) is formed.
Matrix hessian_vector_product(const CoClusterMatrix& p, const Matrix& w, const Matrix& v);

}  // namespace ssnmf

#endif  // SSNMF_OBJECTIVE_HPP
