#include "ssnmf/planted.hpp"

#include <random>

namespace ssnmf {
namespace {

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id)};
  return std::mt19937_64(seq);
}

}  // namespace

PlantedInstance planted_instance(Index n, Index k, std::uint64_t seed) {
  auto rng = stream(seed, 0);
  FactorMatrix truth = FactorMatrix::dirichlet(n, k, 0.1, rng);
  const Matrix p = truth.entries() * truth.entries().transpose();
  return {std::move(truth), CoClusterMatrix::validate(p)};
}

FactorMatrix shared_initial_point(Index n, Index k, std::uint64_t seed) {
  auto rng = stream(seed, 1);
  return FactorMatrix::dirichlet(n, k, 1.0, rng);
}

}  // namespace ssnmf
