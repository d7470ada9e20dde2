#pragma once

// Ample pairs of a finite quasi-metric space and the machinery that moves
// them onto the hull of minimal pairs: the star transform, the averaging
// map q and its limit p, the hull quasi-metric D, the point embedding and
// the extension from a subspace.

#include <cstddef>
#include <optional>
#include <vector>

#include "qhyper/qspace.hpp"

namespace qhyper {

/// Slack on d(x,y) <= f2(x) + f1(y).
inline constexpr double kAmpleTol = 1e-9;
/// Default stopping tolerance of the projection.
inline constexpr double kProjectionTol = 1e-9;
/// Tolerance at which a pair is accepted as minimal.
inline constexpr double kCertifyTol = 1e-7;
inline constexpr int kDefaultMaxIter = 200;

/// A pair (f1, f2) of non-negative functions on the points of a space,
/// stored as value tables indexed like the space.
struct AmplePair {
  std::vector<double> f1;
  std::vector<double> f2;
  bool certified_minimal = false;
  /// Sup-norm distance to the star transform recorded at certification.
  double certification_residual = 0.0;

  std::size_t size() const noexcept { return f1.size(); }
};

struct AmpleCheck {
  bool ample = true;
  /// Most violated pair (x, y) and by how much d(x,y) exceeds f2(x) + f1(y).
  std::size_t x = 0;
  std::size_t y = 0;
  double magnitude = 0.0;
};

/// Throws LengthMismatch if the tables do not match the space.
AmpleCheck is_ample(const QSpace& space, const AmplePair& f, double tol = kAmpleTol);

/// f1*(x) = max_y (d(y,x) - f2(y))+, f2*(x) = max_y (d(x,y) - f1(y))+.
/// Always f* <= f. The result need not be ample itself.
AmplePair star(const QSpace& space, const AmplePair& f);

/// One averaging step ((f1 + f1*)/2, (f2 + f2*)/2); ample whenever f is.
AmplePair q_step(const QSpace& space, const AmplePair& f);

struct ProjectionStats {
  int iterations = 0;
  /// Sup-norm change of the last step.
  double last_change = 0.0;
  /// Sup-norm distance of the result to its star transform.
  double residual = 0.0;
  /// The gap g - g* never grew between iterations (up to 1e-15).
  bool gap_monotone = true;
};

/// Iterates q until the sup-norm change is at most tol. The result is
/// below f, ample, and certified minimal at 10 * tol. Throws NotAmple, or
/// NoConvergence when max_iter steps leave a residual above 10 * tol.
AmplePair p_project(const QSpace& space, const AmplePair& f, double tol = kProjectionTol,
                    int max_iter = kDefaultMaxIter, ProjectionStats* stats = nullptr);

/// ||f - f*||_inf <= tol. Throws NotAmple.
bool in_hull(const QSpace& space, const AmplePair& f, double tol = kCertifyTol);

enum class PairDistance { D, Dsym };

/// D(f,g) = max(max_x (f1 - g1)+, max_x (g2 - f2)+); Dsym is the sup-norm
/// of both components. Throws SpaceMismatch on differing lengths.
double dist(const AmplePair& f, const AmplePair& g, PairDistance mode = PairDistance::D);

/// (d(x, .), d(., x)), certified minimal.
AmplePair embed_q(const QSpace& space, std::size_t x);

/// Lower envelope f2(x) = max_y (d(x,y) - f1(y))+ completing f1 to an
/// ample pair.
AmplePair complete_from_f1(const QSpace& space, std::vector<double> f1);
/// Mirror image: f1(y) = max_x (d(x,y) - f2(x))+.
AmplePair complete_from_f2(const QSpace& space, std::vector<double> f2);

/// Restriction of a pair on `space` to the points of `subset`.
AmplePair restrict_pair(const AmplePair& f, const SubsetRef& subset);

/// Inf-convolution extension from a subspace:
/// sigma1(x) = min_y (d(y,x) + f1(y)), sigma2(x) = min_y (f2(y) + d(x,y)).
AmplePair extend_sigma(const QSpace& space, const SubsetRef& subset, const AmplePair& f);

/// p(sigma(f)): the isometric embedding of the subspace hull into the hull.
/// `f` must be certified minimal on restrict(space, subset) (NotMinimal) and
/// sized like the subset (SubsetMismatch).
AmplePair extend_iota(const QSpace& space, const SubsetRef& subset, const AmplePair& f,
                      double tol = kProjectionTol, int max_iter = kDefaultMaxIter);

/// Entrywise f <= g + tol.
bool pair_leq(const AmplePair& f, const AmplePair& g, double tol = 0.0);

}  // namespace qhyper
