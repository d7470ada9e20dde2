#include "qhyper/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "qhyper/hull.hpp"
#include "qhyper/random.hpp"

namespace qhyper {

std::optional<std::size_t> check_family(const QSpace& space, const BallFamily& family,
                                        double delta) {
  for (const BallEntry& e : family) {
    if (e.point >= space.size())
      throw Error(ErrorCode::IndexOutOfRange, "family centre outside the space");
    if (e.r < 0.0 || e.s < 0.0) throw Error(ErrorCode::InfeasibleFamily, "negative radius");
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      const double excess = space(family[i].point, family[j].point) - (family[i].r + family[j].s);
      if (excess > kFamilyTol) {
        std::ostringstream os;
        os << "entries " << i << " and " << j << ": d(x_i, x_j) exceeds r_i + s_j by " << excess;
        throw Error(ErrorCode::InfeasibleFamily, os.str());
      }
    }
  }
  for (std::size_t z = 0; z < space.size(); ++z) {
    const bool inside = std::all_of(family.begin(), family.end(), [&](const BallEntry& e) {
      return space(e.point, z) <= e.r + delta + kFamilyTol &&
             space(z, e.point) <= e.s + delta + kFamilyTol;
    });
    if (inside) return z;
  }
  return std::nullopt;
}

double min_family_delta(const QSpace& space, const BallFamily& family, double tol) {
  if (check_family(space, family, 0.0)) return 0.0;
  double lo = 0.0;
  double hi = space.diameter();
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (check_family(space, family, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

BallFamily family_from_hull_point(const QSpace& space, const AmplePair& f) {
  if (!in_hull(space, f, kCertifyTol))
    throw Error(ErrorCode::NotMinimal, "family needs a minimal ample pair");
  BallFamily family;
  family.reserve(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) family.push_back({x, f.f2[x], f.f1[x]});
  return family;
}

double distance_to_embedded(const QSpace& space, const AmplePair& f) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < space.size(); ++x)
    best = std::min(best, dist(f, embed_q(space, x), PairDistance::Dsym));
  return best;
}

namespace {

struct AscentResult {
  AmplePair point;
  double value;
  double final_step;
};

// Random local ascent: bump one coordinate (or all) of f1 or f2, rebuild
// the other side as the lower envelope, project, keep improvements.
AscentResult ascend(const QSpace& space, AmplePair start, double value, Rng& rng) {
  const std::size_t n = space.size();
  const double diam = space.diameter();
  double step = 0.25 * diam;
  const double min_step = 1e-6 * diam;
  constexpr int kFailuresBeforeShrink = 12;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> coord(0, n - 1);
  std::bernoulli_distribution coin(0.5);

  int failures = 0;
  while (step >= min_step) {
    const bool use_f2 = coin(rng);
    std::vector<double> table = use_f2 ? start.f2 : start.f1;
    if (coin(rng)) {
      const std::size_t i = coord(rng);
      table[i] = std::max(0.0, table[i] + step * unit(rng));
    } else {
      for (double& v : table) v = std::max(0.0, v + step * unit(rng));
    }
    const AmplePair cand = p_project(
        space, use_f2 ? complete_from_f2(space, std::move(table)) : complete_from_f1(space, std::move(table)));
    const double v = distance_to_embedded(space, cand);
    if (v > value) {
      start = cand;
      value = v;
      failures = 0;
    } else if (++failures >= kFailuresBeforeShrink) {
      step *= 0.5;
      failures = 0;
    }
  }
  return {std::move(start), value, step};
}

}  // namespace

DeltaEstimate delta_estimate(const QSpace& space, std::size_t samples, std::size_t restarts,
                             std::uint64_t seed) {
  DeltaEstimate est;
  const HullSample hull = sample_hull(space, samples, seed);
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < hull.points.size(); ++i)
    ranked.emplace_back(distance_to_embedded(space, hull.points[i]), i);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  est.lower = ranked.front().first;
  est.argmax = hull.points[ranked.front().second];
  if (space.diameter() == 0.0) return est;

  double margin = 0.0;
  const std::size_t starts = std::min(restarts, ranked.size());
  for (std::size_t k = 0; k < starts; ++k) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
    AscentResult r = ascend(space, hull.points[ranked[k].second], ranked[k].first, rng);
    if (r.value > est.lower) {
      est.lower = r.value;
      est.argmax = std::move(r.point);
    }
    margin = std::max(margin, r.final_step);
  }
  est.heuristic_upper = est.lower + margin;
  return est;
}

bool is_nonexpansive(const QSpace& space, const SelfMap& t, double tol) {
  for (std::size_t x = 0; x < space.size(); ++x)
    for (std::size_t y = 0; y < space.size(); ++y)
      if (space(t[x], t[y]) > space(x, y) + tol) return false;
  return true;
}

std::vector<SelfMap> random_nonexpansive(const QSpace& space, std::uint64_t seed,
                                         std::uint64_t exhaustive_cap, std::size_t sample_target) {
  const std::size_t n = space.size();
  auto consistent = [&](const SelfMap& t, std::size_t upto) {
    const std::size_t x = upto;
    for (std::size_t y = 0; y <= upto; ++y)
      if (space(t[x], t[y]) > space(x, y) + kNonexpansiveTol ||
          space(t[y], t[x]) > space(y, x) + kNonexpansiveTol)
        return false;
    return true;
  };

  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(n);
  std::vector<SelfMap> out;
  SelfMap t(n, 0);

  if (total <= static_cast<double>(exhaustive_cap)) {
    std::function<void(std::size_t)> enumerate = [&](std::size_t x) {
      if (x == n) {
        out.push_back(t);
        return;
      }
      for (std::size_t v = 0; v < n; ++v) {
        t[x] = v;
        if (consistent(t, x)) enumerate(x + 1);
      }
    };
    enumerate(0);
    return out;
  }

  std::set<SelfMap> seen;
  SelfMap id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  seen.insert(id);
  for (std::size_t c = 0; c < n; ++c) seen.insert(SelfMap(n, c));

  // Randomised depth-first search; the identity guarantees success.
  Rng rng(seed);
  std::function<bool(std::size_t)> fill = [&](std::size_t x) {
    if (x == n) return true;
    std::vector<std::size_t> values(n);
    for (std::size_t v = 0; v < n; ++v) values[v] = v;
    std::shuffle(values.begin(), values.end(), rng);
    for (std::size_t v : values) {
      t[x] = v;
      if (consistent(t, x) && fill(x + 1)) return true;
    }
    return false;
  };
  const std::size_t target = sample_target + n + 1;
  for (std::size_t attempt = 0; attempt < 20 * sample_target && seen.size() < target; ++attempt) {
    if (fill(0)) seen.insert(t);
  }
  out.assign(seen.begin(), seen.end());
  return out;
}

FixedPointGap fixed_point_gap(const QSpace& space, const SelfMap& t) {
  if (t.size() != space.size()) throw Error(ErrorCode::LengthMismatch, "map is not total");
  for (std::size_t v : t)
    if (v >= space.size()) throw Error(ErrorCode::IndexOutOfRange, "map leaves the space");
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t y = 0; y < space.size(); ++y) {
      if (space(t[x], t[y]) > space(x, y) + kNonexpansiveTol) {
        std::ostringstream os;
        os << "d(T" << x << ", T" << y << ") = " << space(t[x], t[y]) << " > d(" << x << ","
           << y << ") = " << space(x, y);
        throw Error(ErrorCode::NotNonexpansive, os.str());
      }
    }
  }
  FixedPointGap g{space.sym(0, t[0]), 0};
  for (std::size_t x = 1; x < space.size(); ++x) {
    if (space.sym(x, t[x]) < g.gap) {
      g.gap = space.sym(x, t[x]);
      g.argmin = x;
    }
  }
  return g;
}

}  // namespace qhyper
