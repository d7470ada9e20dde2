#pragma once

// Finite nets of the hull of minimal ample pairs.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qhyper/ample.hpp"

namespace qhyper {

/// Two samples closer than this in Dsym are treated as the same point.
inline constexpr double kDedupTol = 1e-9;

struct HullSample {
  QSpace space;
  /// Certified minimal pairs; the embedded points come first.
  std::vector<AmplePair> points;
  /// embedded[x] is the index in `points` of the embedding of point x.
  std::vector<std::size_t> embedded;
  std::uint64_t seed = 0;
  /// Minimum pairwise Dsym among distinct points (0 for a single point).
  double spread = 0.0;
};

struct HullSampleOptions {
  /// Initial bump radius as a fraction of the diameter; halved on rejection.
  double perturb_fraction = 0.25;
  double projection_tol = kProjectionTol;
  int max_iter = kDefaultMaxIter;
};

/// Draws k candidates (fresh random pairs or bumps of existing members),
/// projects each onto the hull and keeps the new ones. Deterministic in
/// (space, k, seed).
HullSample sample_hull(const QSpace& space, std::size_t k, std::uint64_t seed,
                       const HullSampleOptions& options = {});

/// The net as a finite quasi-metric space under D. Embedded points keep
/// the labels of the original space; the rest are labelled "h<i>".
QSpace hull_as_qspace(const HullSample& hull);

struct DiagonalReport {
  std::size_t diagonal = 0;
  std::size_t non_diagonal = 0;
  /// Every diagonal sample passed in_hull at the certification tolerance.
  bool diagonal_minimal = true;
  /// Worst |Dsym(h(f), h(g)) - ||f - g||| over diagonal pairs.
  double max_sup_norm_error = 0.0;
};

/// For a symmetric space: counts samples with f1 = f2 (within 1e-7) and
/// checks that the diagonal embedding is isometric on them. Throws NotMetric.
DiagonalReport metric_diag_check(const QSpace& space, const HullSample& hull);

}  // namespace qhyper
