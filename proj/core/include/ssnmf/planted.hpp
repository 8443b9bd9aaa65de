// Synthetic instances with known optimum and seeded shared starting points.

#ifndef SSNMF_PLANTED_HPP
#define SSNMF_PLANTED_HPP

#include <cstdint>

#include "ssnmf/types.hpp"

namespace ssnmf {

struct PlantedInstance {
  FactorMatrix truth;  ///< W*, rows ~ Dirichlet(0.1)
  CoClusterMatrix p;   ///< W* W*^T, so min f = 0
};

PlantedInstance planted_instance(Index n, Index k, std::uint64_t seed);

/// Dirichlet(1) rows from a stream independent of planted_instance's; every
/// solver given the same seed starts from the same point.
FactorMatrix shared_initial_point(Index n, Index k, std::uint64_t seed);

}  // namespace ssnmf

#endif  // SSNMF_PLANTED_HPP
