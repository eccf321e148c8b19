#pragma once

#include <cstddef>

namespace gapred {

/// Size caps for the exhaustive solvers and the exponential constructions.
/// Every cap is a plain configuration value; callers raise them explicitly
/// when they know an instance is tractable.
struct SolverLimits {
  std::size_t maxsat_variables = 24;
  std::size_t clique_vertices = 64;
  std::size_t mmis_vertices = 40;
  std::size_t setcover_family = 30;
  std::size_t minrep_vertices = 24;
  std::size_t power_vertices = 1 << 14;
  std::size_t supervertices = 1 << 16;
  std::size_t union_family = 1 << 17;
};

}  // namespace gapred
