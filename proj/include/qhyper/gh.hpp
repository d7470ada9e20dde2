#pragma once

// Correspondences, their distortion, the exact Gromov-Hausdorff distance
// of small spaces, the glue space realising it, and conversions between
// correspondences and Sym-rough isometries.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qhyper/qspace.hpp"

namespace qhyper {

/// A relation between {0..left_size-1} and {0..right_size-1}.
struct Correspondence {
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  /// Sorted, duplicate-free copy.
  Correspondence normalized() const;
  Correspondence transposed() const;
};

/// Throws NotACorrespondence naming the first uncovered index.
void check_correspondence(const Correspondence& r);

/// max over (x,y),(x',y') in R of |w_X(x,x') - w_Y(y,y')|. Works on
/// arbitrary weight matrices; no axioms are assumed.
double distortion(const Matrix& wx, const Matrix& wy, const Correspondence& r);
double distortion(const QSpace& x, const QSpace& y, const Correspondence& r);

inline constexpr std::uint64_t kDefaultGhBudget = 50'000'000;

struct GhResult {
  /// Half the minimal distortion (an upper bound when `exact` is false).
  double value = 0.0;
  Correspondence best;
  bool exact = true;
  std::uint64_t nodes = 0;
};

/// Branch and bound over correspondences graph(phi) u graph(psi)^T. When
/// the node budget runs out the best correspondence found so far is
/// returned with exact = false.
GhResult gh_exact(const Matrix& wx, const Matrix& wy, std::uint64_t budget = kDefaultGhBudget);
GhResult gh_exact(const QSpace& x, const QSpace& y, std::uint64_t budget = kDefaultGhBudget);

/// Disjoint union with cross distances
///   d(x,y) = min_R d_X(x,x') + eps + d_Y(y',y),
///   d(y,x) = min_R d_Y(y,y') + eps + d_X(x',x).
/// X occupies indices [0, |X|), Y the rest. Throws EpsTooSmall (with the
/// violating triple) when the result breaks the triangle inequality.
QSpace glue_space(const QSpace& x, const QSpace& y, const Correspondence& r, double eps);

struct RoughIsometryWitness {
  std::vector<std::size_t> map;
  /// max |d_X(x,x') - d_Y(phi x, phi x')|
  double eps_embed = 0.0;
  /// Least eps with phi(X) eps-Sym-large in Y.
  double eps_large = 0.0;
  double eps = 0.0;
};

RoughIsometryWitness verify_rough_isometry(const std::vector<std::size_t>& phi, const QSpace& x,
                                           const QSpace& y);

/// phi(x) = lowest y with (x,y) in R. Throws NotACorrespondence.
RoughIsometryWitness rough_isometry_from_correspondence(const QSpace& x, const QSpace& y,
                                                        const Correspondence& r);

/// {(x,y) : d^s(phi x, y) <= eps}.
Correspondence correspondence_from_rough_isometry(const QSpace& x, const QSpace& y,
                                                  const RoughIsometryWitness& w);

struct RoughInverse {
  std::vector<std::size_t> map;
  /// max (d_X(psi y, psi y') - d_Y(y, y'))+; bounded by 3 eps.
  double nonexpansion = 0.0;
  /// max_y d^s(phi psi y, y); bounded by eps.
  double phi_psi_closeness = 0.0;
  /// max_x d^s(psi phi x, x); bounded by 2 eps.
  double psi_phi_closeness = 0.0;
  bool within_bounds = true;
};

/// psi(y) = lowest x minimising d^s(y, phi x).
RoughInverse sym_rough_inverse(const QSpace& x, const QSpace& y, const RoughIsometryWitness& w,
                               double tol = 1e-9);

}  // namespace qhyper
