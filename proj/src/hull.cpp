#include "qhyper/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhyper/random.hpp"

namespace qhyper {

namespace {

bool is_duplicate(const std::vector<AmplePair>& points, const AmplePair& f) {
  return std::any_of(points.begin(), points.end(), [&f](const AmplePair& g) {
    return dist(f, g, PairDistance::Dsym) < kDedupTol;
  });
}

}  // namespace

HullSample sample_hull(const QSpace& space, std::size_t k, std::uint64_t seed,
                       const HullSampleOptions& options) {
  HullSample out{space, {}, {}, seed, 0.0};
  const std::size_t n = space.size();

  for (std::size_t x = 0; x < n; ++x) {
    AmplePair e = embed_q(space, x);
    auto it = std::find_if(out.points.begin(), out.points.end(), [&e](const AmplePair& g) {
      return dist(e, g, PairDistance::Dsym) < kDedupTol;
    });
    if (it == out.points.end()) {
      out.embedded.push_back(out.points.size());
      out.points.push_back(std::move(e));
    } else {
      out.embedded.push_back(static_cast<std::size_t>(it - out.points.begin()));
    }
  }

  const double diam = space.diameter();
  if (diam > 0.0) {
    Rng rng(seed);
    std::uniform_real_distribution<double> fresh(0.0, 2.0 * diam);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    const double initial_radius = options.perturb_fraction * diam;
    double radius = initial_radius;

    for (std::size_t c = 0; c < k; ++c) {
      const bool use_f2 = coin(rng);
      std::vector<double> table(n);
      const bool bump = coin(rng);
      if (bump) {
        std::uniform_int_distribution<std::size_t> pick(0, out.points.size() - 1);
        const AmplePair& base = out.points[pick(rng)];
        const std::vector<double>& src = use_f2 ? base.f2 : base.f1;
        for (std::size_t i = 0; i < n; ++i) table[i] = std::max(0.0, src[i] + radius * unit(rng));
      } else {
        for (double& v : table) v = fresh(rng);
      }
      const AmplePair start =
          use_f2 ? complete_from_f2(space, std::move(table)) : complete_from_f1(space, std::move(table));
      AmplePair f = p_project(space, start, options.projection_tol, options.max_iter);
      if (is_duplicate(out.points, f)) {
        if (bump) {
          radius *= 0.5;
          if (radius < 1e-6 * diam) radius = initial_radius;
        }
        continue;
      }
      out.points.push_back(std::move(f));
    }
  }

  if (out.points.size() > 1) {
    double spread = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.points.size(); ++i)
      for (std::size_t j = i + 1; j < out.points.size(); ++j)
        spread = std::min(spread, dist(out.points[i], out.points[j], PairDistance::Dsym));
    out.spread = spread;
  }
  return out;
}

QSpace hull_as_qspace(const HullSample& hull) {
  const std::size_t m = hull.points.size();
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = "h" + std::to_string(i);
  for (std::size_t x = 0; x < hull.embedded.size(); ++x)
    labels[hull.embedded[x]] = hull.space.labels()[x];
  Matrix d(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      d(i, j) = i == j ? 0.0 : dist(hull.points[i], hull.points[j], PairDistance::D);
  return QSpace(std::move(labels), std::move(d));
}

DiagonalReport metric_diag_check(const QSpace& space, const HullSample& hull) {
  if (!space.report().satisfies_M3)
    throw Error(ErrorCode::NotMetric, "diagonal embedding needs a symmetric distance");
  DiagonalReport rep;
  std::vector<const AmplePair*> diag;
  for (const AmplePair& f : hull.points) {
    double gap = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) gap = std::max(gap, std::abs(f.f1[i] - f.f2[i]));
    if (gap <= kCertifyTol) {
      ++rep.diagonal;
      diag.push_back(&f);
      if (!in_hull(space, f, kCertifyTol)) rep.diagonal_minimal = false;
    } else {
      ++rep.non_diagonal;
    }
  }
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      double sup = 0.0;
      for (std::size_t p = 0; p < diag[i]->size(); ++p)
        sup = std::max(sup, std::abs(diag[i]->f1[p] - diag[j]->f1[p]));
      const double ds = dist(*diag[i], *diag[j], PairDistance::Dsym);
      rep.max_sup_norm_error = std::max(rep.max_sup_norm_error, std::abs(ds - sup));
    }
  }
  return rep;
}

}  // namespace qhyper
