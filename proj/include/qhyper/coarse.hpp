#pragma once

// Sym-coarse injectivity: ball families, the hull-distance form of the
// injectivity constant, and the fixed-point gap of non-expansive maps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qhyper/ample.hpp"

namespace qhyper {

struct BallEntry {
  std::size_t point;
  double r;  // forward radius: d(point, z) <= r + delta
  double s;  // backward radius: d(z, point) <= s + delta
};

/// Feasible when d(x_i, x_j) <= r_i + s_j for all i, j.
using BallFamily = std::vector<BallEntry>;

inline constexpr double kFamilyTol = 1e-9;
inline constexpr double kBisectionTol = 1e-7;
inline constexpr double kNonexpansiveTol = 1e-9;

/// Lowest z lying in every inflated ball pair, if any. Throws
/// InfeasibleFamily naming a violating pair, or IndexOutOfRange.
std::optional<std::size_t> check_family(const QSpace& space, const BallFamily& family,
                                        double delta);

/// Smallest delta for which check_family succeeds, by bisection on
/// [0, diam X] down to `tol`.
double min_family_delta(const QSpace& space, const BallFamily& family,
                        double tol = kBisectionTol);

/// {(x, f2(x), f1(x))}. Throws NotMinimal unless f is in the hull.
BallFamily family_from_hull_point(const QSpace& space, const AmplePair& f);

/// min_x Dsym(f, q(x)).
double distance_to_embedded(const QSpace& space, const AmplePair& f);

struct DeltaEstimate {
  /// Largest distance_to_embedded over certified hull points visited.
  double lower = 0.0;
  /// lower + the step size at which the ascent stagnated. Not a bound.
  double heuristic_upper = 0.0;
  AmplePair argmax;
};

DeltaEstimate delta_estimate(const QSpace& space, std::size_t samples, std::size_t restarts,
                             std::uint64_t seed);

using SelfMap = std::vector<std::size_t>;

bool is_nonexpansive(const QSpace& space, const SelfMap& t, double tol = kNonexpansiveTol);

/// All non-expansive self-maps when n^n <= exhaustive_cap; otherwise the
/// identity, the constants and up to `sample_target` rejection-sampled
/// maps. Deterministic in the seed.
std::vector<SelfMap> random_nonexpansive(const QSpace& space, std::uint64_t seed,
                                         std::uint64_t exhaustive_cap = 100'000,
                                         std::size_t sample_target = 64);

struct FixedPointGap {
  double gap = 0.0;
  std::size_t argmin = 0;
};

/// min_x d^s(x, T x) with the lowest minimiser. Throws NotNonexpansive.
FixedPointGap fixed_point_gap(const QSpace& space, const SelfMap& t);

}  // namespace qhyper
