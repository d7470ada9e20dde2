#pragma once

#include <cstdint>
#include <random>

#include "qhyper/qspace.hpp"

namespace qhyper {

using Rng = std::mt19937_64;

/// Shortest-path closure of a non-negative matrix (zero diagonal forced):
/// the largest quasi-metric below it.
Matrix shortest_path_closure(Matrix w);

/// Random quasi-metric on n points: uniform weights in [0, scale], with
/// each off-diagonal entry zeroed with probability `zero_prob`, then closed
/// under shortest paths.
QSpace random_qspace(std::size_t n, Rng& rng, double scale = 1.0, double zero_prob = 0.15);

/// Multiplies every off-diagonal entry by a factor in [1 - noise, 1 + noise]
/// and re-closes.
QSpace perturb_qspace(const QSpace& x, Rng& rng, double noise);

/// Same space with point i renamed perm[i].
QSpace permute(const QSpace& x, const std::vector<std::size_t>& perm);

}  // namespace qhyper
