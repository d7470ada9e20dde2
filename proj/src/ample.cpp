#include "qhyper/ample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qhyper {

namespace {

double pos(double v) { return v > 0.0 ? v : 0.0; }

void check_length(const QSpace& space, const AmplePair& f) {
  if (f.f1.size() != space.size() || f.f2.size() != space.size()) {
    std::ostringstream os;
    os << "pair of lengths (" << f.f1.size() << "," << f.f2.size() << ") on a space of "
       << space.size() << " points";
    throw Error(ErrorCode::LengthMismatch, os.str());
  }
}

void require_ample(const QSpace& space, const AmplePair& f) {
  const AmpleCheck c = is_ample(space, f);
  if (!c.ample) {
    std::ostringstream os;
    os << "d(" << c.x << "," << c.y << ") exceeds f2(" << c.x << ") + f1(" << c.y << ") by "
       << c.magnitude;
    throw Error(ErrorCode::NotAmple, os.str());
  }
}

double sup_gap(const AmplePair& f, const AmplePair& g) {
  double r = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    r = std::max(r, std::abs(f.f1[i] - g.f1[i]));
    r = std::max(r, std::abs(f.f2[i] - g.f2[i]));
  }
  return r;
}

}  // namespace

AmpleCheck is_ample(const QSpace& space, const AmplePair& f, double tol) {
  check_length(space, f);
  AmpleCheck out;
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t y = 0; y < space.size(); ++y) {
      const double excess = space(x, y) - (f.f2[x] + f.f1[y]);
      if (excess > out.magnitude) {
        out.magnitude = excess;
        out.x = x;
        out.y = y;
      }
    }
  }
  out.ample = out.magnitude <= tol;
  return out;
}

AmplePair star(const QSpace& space, const AmplePair& f) {
  check_length(space, f);
  const std::size_t n = space.size();
  AmplePair s;
  s.f1.assign(n, 0.0);
  s.f2.assign(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    double a = 0.0;
    double b = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      a = std::max(a, pos(space(y, x) - f.f2[y]));
      b = std::max(b, pos(space(x, y) - f.f1[y]));
    }
    s.f1[x] = a;
    s.f2[x] = b;
  }
  return s;
}

AmplePair q_step(const QSpace& space, const AmplePair& f) {
  const AmplePair s = star(space, f);
  AmplePair out;
  out.f1.resize(f.size());
  out.f2.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.f1[i] = 0.5 * (f.f1[i] + s.f1[i]);
    out.f2[i] = 0.5 * (f.f2[i] + s.f2[i]);
  }
  return out;
}

AmplePair p_project(const QSpace& space, const AmplePair& f, double tol, int max_iter,
                    ProjectionStats* stats) {
  require_ample(space, f);
  AmplePair g{f.f1, f.f2};
  ProjectionStats st;
  for (st.iterations = 0; st.iterations < max_iter; ++st.iterations) {
    AmplePair next = q_step(space, g);
    const double change = sup_gap(g, next);
    // change = ||g - g*|| / 2
    if (st.iterations > 0 && change > st.last_change + 1e-15) st.gap_monotone = false;
    st.last_change = change;
    g = std::move(next);
    if (st.last_change <= tol) {
      ++st.iterations;
      break;
    }
  }
  st.residual = sup_gap(g, star(space, g));
  if (st.residual > 10.0 * tol) {
    if (stats) *stats = st;
    throw NoConvergence(st.iterations, st.residual);
  }
  // Snap to an exact fixed point: f2 := f1*, then f1 := f2*. Both steps only
  // lower the pair, and f1*** = f1* makes the result minimal.
  g = complete_from_f2(space, complete_from_f1(space, std::move(g.f1)).f2);
  st.residual = sup_gap(g, star(space, g));
  if (stats) *stats = st;
  g.certified_minimal = true;
  g.certification_residual = st.residual;
  return g;
}

bool in_hull(const QSpace& space, const AmplePair& f, double tol) {
  require_ample(space, f);
  return sup_gap(f, star(space, f)) <= tol;
}

double dist(const AmplePair& f, const AmplePair& g, PairDistance mode) {
  if (f.f1.size() != g.f1.size() || f.f2.size() != g.f2.size() || f.f1.size() != f.f2.size())
    throw Error(ErrorCode::SpaceMismatch, "pairs live on spaces of different sizes");
  double r = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (mode == PairDistance::D) {
      r = std::max(r, f.f1[i] - g.f1[i]);
      r = std::max(r, g.f2[i] - f.f2[i]);
    } else {
      r = std::max(r, std::abs(f.f1[i] - g.f1[i]));
      r = std::max(r, std::abs(f.f2[i] - g.f2[i]));
    }
  }
  return r;
}

AmplePair embed_q(const QSpace& space, std::size_t x) {
  if (x >= space.size()) {
    std::ostringstream os;
    os << "point " << x << " outside a space of " << space.size() << " points";
    throw Error(ErrorCode::IndexOutOfRange, os.str());
  }
  AmplePair f;
  f.f1.resize(space.size());
  f.f2.resize(space.size());
  for (std::size_t y = 0; y < space.size(); ++y) {
    f.f1[y] = space(x, y);
    f.f2[y] = space(y, x);
  }
  f.certified_minimal = true;
  return f;
}

AmplePair complete_from_f1(const QSpace& space, std::vector<double> f1) {
  if (f1.size() != space.size()) throw Error(ErrorCode::LengthMismatch, "f1 length");
  AmplePair f;
  f.f2.assign(space.size(), 0.0);
  for (std::size_t x = 0; x < space.size(); ++x)
    for (std::size_t y = 0; y < space.size(); ++y)
      f.f2[x] = std::max(f.f2[x], pos(space(x, y) - f1[y]));
  f.f1 = std::move(f1);
  return f;
}

AmplePair complete_from_f2(const QSpace& space, std::vector<double> f2) {
  if (f2.size() != space.size()) throw Error(ErrorCode::LengthMismatch, "f2 length");
  AmplePair f;
  f.f1.assign(space.size(), 0.0);
  for (std::size_t y = 0; y < space.size(); ++y)
    for (std::size_t x = 0; x < space.size(); ++x)
      f.f1[y] = std::max(f.f1[y], pos(space(x, y) - f2[x]));
  f.f2 = std::move(f2);
  return f;
}

AmplePair restrict_pair(const AmplePair& f, const SubsetRef& subset) {
  if (subset.parent_size() != f.size())
    throw Error(ErrorCode::SubsetMismatch, "subset parent differs from pair length");
  AmplePair out;
  out.f1.reserve(subset.size());
  out.f2.reserve(subset.size());
  for (std::size_t i : subset.indices()) {
    out.f1.push_back(f.f1[i]);
    out.f2.push_back(f.f2[i]);
  }
  return out;
}

AmplePair extend_sigma(const QSpace& space, const SubsetRef& subset, const AmplePair& f) {
  if (subset.parent_size() != space.size() || f.f1.size() != subset.size() ||
      f.f2.size() != subset.size())
    throw Error(ErrorCode::SubsetMismatch, "pair, subset and space sizes disagree");
  const std::size_t n = space.size();
  AmplePair s;
  s.f1.resize(n);
  s.f2.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    double a = space(subset[0], x) + f.f1[0];
    double b = f.f2[0] + space(x, subset[0]);
    for (std::size_t k = 1; k < subset.size(); ++k) {
      a = std::min(a, space(subset[k], x) + f.f1[k]);
      b = std::min(b, f.f2[k] + space(x, subset[k]));
    }
    s.f1[x] = a;
    s.f2[x] = b;
  }
  return s;
}

AmplePair extend_iota(const QSpace& space, const SubsetRef& subset, const AmplePair& f,
                      double tol, int max_iter) {
  if (subset.parent_size() != space.size() || f.f1.size() != subset.size() ||
      f.f2.size() != subset.size())
    throw Error(ErrorCode::SubsetMismatch, "pair, subset and space sizes disagree");
  const QSpace sub = restrict(space, subset);
  if (!in_hull(sub, f, kCertifyTol))
    throw Error(ErrorCode::NotMinimal, "pair is not a minimal ample pair of the subspace");
  return p_project(space, extend_sigma(space, subset, f), tol, max_iter);
}

bool pair_leq(const AmplePair& f, const AmplePair& g, double tol) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.f1[i] > g.f1[i] + tol || f.f2[i] > g.f2[i] + tol) return false;
  return true;
}

}  // namespace qhyper
