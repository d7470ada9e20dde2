// Acceptance run: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qhyper/ample.hpp"
#include "qhyper/coarse.hpp"
#include "qhyper/gh.hpp"
#include "qhyper/hull.hpp"
#include "qhyper/io.hpp"
#include "qhyper/random.hpp"

using namespace qhyper;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double time_limit,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0) {
    std::ostringstream lim;
    lim << "runtime " << secs << " s over limit " << time_limit << " s";
    out.require(secs < time_limit, lim.str());
  }
  if (!out.pass) ++failures;
  std::printf("%s %2d %-28s %.3fs  %s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
              out.detail.str().c_str());
  std::fflush(stdout);
}

std::vector<QSpace> demos() {
  std::vector<QSpace> out;
  for (const auto& n : io::demo_names()) out.push_back(io::demo(n));
  return out;
}

QSpace point() { return QSpace::from_rows({{0}}); }

AmplePair random_ample(const QSpace& x, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * x.diameter() + 1e-3);
  std::vector<double> f1(x.size());
  for (double& v : f1) v = u(rng);
  AmplePair f = complete_from_f1(x, std::move(f1));
  std::uniform_real_distribution<double> extra(0.0, 0.5 * x.diameter() + 1e-3);
  for (double& v : f.f2) v += extra(rng);
  return f;
}

// min over x of the sup-norm distance to (d(x,.), d(.,x)), computed directly.
double min_sym_to_embedding(const QSpace& x, const AmplePair& f) {
  double best = INFINITY;
  for (std::size_t p = 0; p < x.size(); ++p) {
    double m = 0.0;
    for (std::size_t y = 0; y < x.size(); ++y) {
      m = std::max(m, std::abs(f.f1[y] - x(p, y)));
      m = std::max(m, std::abs(f.f2[y] - x(y, p)));
    }
    best = std::min(best, m);
  }
  return best;
}

// The equivalence needs T0 spaces; redraw until separation holds.
QSpace random_t0(std::size_t n, Rng& rng) {
  for (;;) {
    QSpace x = random_qspace(n, rng, 1.0, 0.4);
    if (x.report().satisfies_M1) return x;
  }
}

std::vector<std::size_t> random_map(std::size_t n, std::size_t m, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::vector<std::size_t> phi(n);
  for (auto& v : phi) v = pick(rng);
  return phi;
}

}  // namespace

int main() {
  criterion(1, "embedding-isometry", 1.0, [](Outcome& o) {
    std::vector<QSpace> spaces = demos();
    Rng rng(101);
    for (int t = 0; t < 100; ++t) spaces.push_back(random_qspace(5, rng));
    double worst = 0.0;
    for (const QSpace& x : spaces)
      for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b)
          worst = std::max(worst, std::abs(dist(embed_q(x, a), embed_q(x, b)) - x(a, b)));
    o.require(worst <= 1e-12, "embedding error above 1e-12");
    o.detail << "max error " << worst;
  });

  criterion(2, "projection-contract", 10.0, [](Outcome& o) {
    Rng rng(202);
    double worst_idem = 0.0, worst_expand = -INFINITY;
    for (const QSpace& x : demos()) {
      AmplePair prev_f = random_ample(x, rng);
      AmplePair prev_p = p_project(x, prev_f);
      for (int t = 0; t < 1000; ++t) {
        const AmplePair f = random_ample(x, rng);
        const AmplePair p = p_project(x, f);
        o.require(pair_leq(p, f), "p(f) above f");
        const AmplePair pp = p_project(x, p);
        for (std::size_t i = 0; i < x.size(); ++i)
          worst_idem = std::max({worst_idem, std::abs(pp.f1[i] - p.f1[i]), std::abs(pp.f2[i] - p.f2[i])});
        worst_expand = std::max(worst_expand, dist(p, prev_p) - dist(f, prev_f));
        prev_f = f;
        prev_p = p;
      }
    }
    o.require(worst_idem <= 1e-7, "idempotence beyond 1e-7");
    o.require(worst_expand <= 1e-9, "D(p f, p g) > D(f, g) + 1e-9");
    o.detail << "idempotence err " << worst_idem << ", max expansion " << worst_expand;
  });

  criterion(3, "sierpinski-hull", 0.0, [](Outcome& o) {
    const QSpace s = io::demo("sierpinski");
    const HullSample h = sample_hull(s, 200, 303);
    double shape = 0.0, metric = 0.0;
    for (const AmplePair& f : h.points) {
      const double t = f.f1[0];
      shape = std::max({shape, std::abs(f.f1[1]), std::abs(f.f2[0]), std::abs(f.f2[1] - (1 - t)),
                        std::max(0.0, -t), std::max(0.0, t - 1)});
    }
    for (const AmplePair& f : h.points)
      for (const AmplePair& g : h.points)
        metric = std::max(metric, std::abs(dist(f, g) - std::max(0.0, f.f1[0] - g.f1[0])));
    o.require(shape <= 1e-6, "sample off the ((t,0),(0,1-t)) family");
    o.require(metric <= 1e-6, "D differs from (t_i - t_j)+");
    o.detail << h.points.size() << " distinct samples, shape err " << shape << ", D err " << metric;
  });

  criterion(4, "gh-oracle-equivalence", 30.0, [](Outcome& o) {
    Rng rng(404);
    std::uniform_int_distribution<std::size_t> sz(1, 3);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const QSpace x = random_qspace(sz(rng), rng);
      const QSpace y = random_qspace(sz(rng), rng);
      worst = std::max(worst, std::abs(gh_exact(x, y).value -
                                       oracle::gh_by_enumeration(x.matrix(), y.matrix())));
    }
    const QSpace s = io::demo("sierpinski");
    const double sp = gh_exact(s, point()).value;
    const double sm = gh_exact(s, io::demo("metric2")).value;
    o.require(worst <= 1e-12, "solver differs from enumeration");
    o.require(sp == 0.5, "gh(S, point) != 0.5");
    o.require(sm == 0.5, "gh(S, metric2) != 0.5");
    o.detail << "max |solver - oracle| " << worst << ", gh(S,pt) " << sp << ", gh(S,metric2) " << sm;
  });

  criterion(5, "corollary-round-trips", 0.0, [](Outcome& o) {
    Rng rng(505);
    std::uniform_int_distribution<std::size_t> sz(1, 4);
    double slack_a = -INFINITY, slack_b = -INFINITY;
    for (int t = 0; t < 100; ++t) {
      const QSpace x = random_qspace(sz(rng), rng);
      const QSpace y = random_qspace(sz(rng), rng);
      const GhResult g = gh_exact(x, y);
      const double dis = distortion(x, y, g.best);
      slack_a = std::max(slack_a, rough_isometry_from_correspondence(x, y, g.best).eps - dis);
      const RoughIsometryWitness w = verify_rough_isometry(random_map(x.size(), y.size(), rng), x, y);
      slack_b = std::max(slack_b, distortion(x, y, correspondence_from_rough_isometry(x, y, w)) - 3 * w.eps);
    }
    o.require(slack_a <= 1e-12, "witness eps above distortion(R)");
    o.require(slack_b <= 1e-9, "distortion above 3 eps");
    o.detail << "max eps - dis(R) " << slack_a << ", max dis - 3eps " << slack_b;
  });

  criterion(6, "subset-lemma-4eps", 60.0, [](Outcome& o) {
    Rng rng(606);
    std::uniform_int_distribution<int> bit(0, 1);
    double worst = -INFINITY;
    std::size_t checked = 0;
    for (int t = 0; t < 50; ++t) {
      const QSpace x = random_qspace(5, rng);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < 5; ++i)
        if (bit(rng)) idx.push_back(i);
      if (idx.empty()) idx.push_back(t % 5);
      const SubsetRef y(5, idx);
      const QSpace xy = restrict(x, y);
      const double eps = largeness_constant(x, y);
      const HullSample h = sample_hull(x, 80, 6000 + t);
      for (std::size_t i = 0; i < h.points.size() && i < 50; ++i, ++checked) {
        const AmplePair& f = h.points[i];
        const AmplePair back = extend_iota(x, y, p_project(xy, restrict_pair(f, y)));
        worst = std::max(worst, dist(f, back, PairDistance::Dsym) - 4 * eps);
      }
    }
    o.require(worst <= 1e-6, "Dsym above 4 eps + 1e-6");
    o.detail << checked << " hull points, max Dsym - 4eps " << worst;
  });

  criterion(7, "stability-8x (net approx)", 0.0, [](Outcome& o) {
    Rng rng(707);
    double worst = -INFINITY;
    for (int t = 0; t < 20; ++t) {
      const QSpace x = random_qspace(4, rng);
      const QSpace y = perturb_qspace(x, rng, 0.2);
      const GhResult g = gh_exact(x, y);
      const double slack = 0.1 * std::max(x.diameter(), y.diameter());
      const HullSample hx = sample_hull(x, 400, 7000 + t);
      const HullSample hy = sample_hull(y, 400, 8000 + t);

      // Both nets sit inside Q(Z) for the glue space Z; match them there.
      const QSpace z = glue_space(x, y, g.best, g.value);
      std::vector<std::size_t> xi(x.size()), yi(y.size());
      std::iota(xi.begin(), xi.end(), 0);
      std::iota(yi.begin(), yi.end(), x.size());
      const SubsetRef sx(z.size(), xi), sy(z.size(), yi);
      std::vector<AmplePair> ix, iy;
      for (const auto& f : hx.points) ix.push_back(extend_iota(z, sx, f));
      for (const auto& f : hy.points) iy.push_back(extend_iota(z, sy, f));

      Correspondence r{ix.size(), iy.size(), {}};
      auto nearest = [](const AmplePair& f, const std::vector<AmplePair>& pool) {
        std::size_t arg = 0;
        double best = INFINITY;
        for (std::size_t k = 0; k < pool.size(); ++k) {
          const double d = dist(f, pool[k], PairDistance::Dsym);
          if (d < best) best = d, arg = k;
        }
        return arg;
      };
      for (std::size_t i = 0; i < ix.size(); ++i) r.pairs.emplace_back(i, nearest(ix[i], iy));
      for (std::size_t j = 0; j < iy.size(); ++j) r.pairs.emplace_back(nearest(iy[j], ix), j);
      const double net_gh = 0.5 * distortion(hull_as_qspace(hx), hull_as_qspace(hy), r.normalized());
      worst = std::max(worst, net_gh - (8 * g.value + slack));
    }
    o.require(worst <= 0.0, "net GH above 8 gh + slack");
    o.detail << "max net_gh - (8gh + 0.1 diam) " << worst << " (net approximation)";
  });

  criterion(8, "delta-constants", 30.0, [](Outcome& o) {
    const DeltaEstimate s = delta_estimate(io::demo("sierpinski"), 1000, 4, 7);
    const DeltaEstimate m = delta_estimate(io::demo("metric2"), 1000, 4, 7);
    const DeltaEstimate p = delta_estimate(point(), 1000, 4, 7);
    o.require(s.lower >= 0.48 && s.lower <= 0.5, "sierpinski outside [0.48, 0.5]");
    o.require(m.lower >= 0.95 && m.lower <= 1.0, "metric2 outside [0.95, 1]");
    o.require(p.lower == 0.0, "one-point not 0");
    o.detail << "S " << s.lower << ", metric2 " << m.lower << ", point " << p.lower;
  });

  criterion(9, "equivalence-theorem", 0.0, [](Outcome& o) {
    Rng rng(909);
    double worst = 0.0;
    std::size_t checked = 0;
    for (int t = 0; checked < 100; ++t) {
      const QSpace x = random_qspace(4, rng);
      const HullSample h = sample_hull(x, 30, 9000 + t);
      for (std::size_t i = 0; i < h.points.size() && i < 10 && checked < 100; ++i, ++checked) {
        const double bis = min_family_delta(x, family_from_hull_point(x, h.points[i]));
        worst = std::max(worst, std::abs(bis - min_sym_to_embedding(x, h.points[i])));
      }
    }
    o.require(worst <= 1e-6, "bisected delta differs from min Dsym");
    o.detail << checked << " hull points, max diff " << worst;
  });

  criterion(10, "fixed-point-corollary", 0.0, [](Outcome& o) {
    const QSpace s = io::demo("sierpinski");
    const QSpace m = io::demo("metric2");
    const auto ms = random_nonexpansive(s, 0);
    const auto mm = random_nonexpansive(m, 0);
    double worst = -INFINITY;
    for (const auto& t : ms) worst = std::max(worst, fixed_point_gap(s, t).gap - 2 * 0.5);
    for (const auto& t : mm) worst = std::max(worst, fixed_point_gap(m, t).gap - 2 * 1.0);
    o.require(ms.size() == 3, "sierpinski map count != 3");
    o.require(worst <= 1e-9, "gap above 2 delta");
    o.detail << ms.size() << " maps on S, " << mm.size() << " on metric2, max gap - 2delta " << worst;
  });

  criterion(11, "hull-diameter-3R", 0.0, [](Outcome& o) {
    double worst = -INFINITY;
    for (const QSpace& x : demos()) {
      const HullSample h = sample_hull(x, 200, 1100);
      for (const auto& f : h.points)
        for (const auto& g : h.points) worst = std::max(worst, dist(f, g) - 3 * x.diameter());
    }
    o.require(worst <= 1e-6, "D above 3 diam");
    o.detail << "max D - 3diam " << worst;
  });

  criterion(12, "finite-compactness", 0.0, [](Outcome& o) {
    Rng rng(1212);
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    std::uniform_int_distribution<int> coin(0, 1);
    int iso = 0, mismatches = 0;
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = sz(rng);
      const QSpace x = random_t0(n, rng);
      std::vector<std::size_t> p(n);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      const QSpace y = coin(rng) ? permute(x, p) : random_t0(coin(rng) ? n : sz(rng), rng);
      const bool isometric = oracle::isometric_by_permutations(x, y);
      iso += isometric;
      const bool zero = gh_exact(x, y).value == 0.0;
      mismatches += zero != isometric || zero != is_isometric(x, y).has_value();
    }
    o.require(mismatches == 0, "gh = 0 disagrees with isometry");
    o.detail << iso << "/50 isometric pairs, " << mismatches << " mismatches";
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
