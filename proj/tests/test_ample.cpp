#include <gtest/gtest.h>

#include "qhyper/ample.hpp"
#include "qhyper/io.hpp"
#include "qhyper/random.hpp"

namespace qhyper {
namespace {

QSpace sierpinski() { return io::demo("sierpinski"); }

AmplePair random_ample(const QSpace& x, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * x.diameter() + 1e-3);
  std::vector<double> f1(x.size());
  for (double& v : f1) v = u(rng);
  AmplePair f = complete_from_f1(x, std::move(f1));
  std::uniform_real_distribution<double> extra(0.0, 0.5 * x.diameter() + 1e-3);
  for (double& v : f.f2) v += extra(rng);
  return f;
}

void expect_pair_near(const AmplePair& a, const AmplePair& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a.f1[i], b.f1[i], tol) << "f1[" << i << "]";
    EXPECT_NEAR(a.f2[i], b.f2[i], tol) << "f2[" << i << "]";
  }
}

TEST(IsAmple, Examples) {
  const QSpace s = sierpinski();
  EXPECT_TRUE(is_ample(s, {{0.5, 0}, {0, 0.5}}).ample);
  const AmpleCheck bad = is_ample(s, {{0, 0}, {0, 0}});
  EXPECT_FALSE(bad.ample);
  EXPECT_EQ(bad.x, 1u);
  EXPECT_EQ(bad.y, 0u);
  EXPECT_DOUBLE_EQ(bad.magnitude, 1.0);
  EXPECT_THROW(is_ample(s, {{0}, {0, 0}}), Error);
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const QSpace x = random_qspace(5, rng);
    for (std::size_t p = 0; p < 5; ++p) EXPECT_TRUE(is_ample(x, embed_q(x, p)).ample);
  }
}

TEST(Star, Examples) {
  const QSpace s = sierpinski();
  const double t = 0.3;
  const AmplePair f{{t, 0}, {0, 1 - t}};
  expect_pair_near(star(s, f), f, 1e-15);
  for (std::size_t x = 0; x < 2; ++x) expect_pair_near(star(s, embed_q(s, x)), embed_q(s, x), 0.0);
  const AmplePair big{{2, 2}, {2, 2}};
  expect_pair_near(star(s, big), AmplePair{{0, 0}, {0, 0}}, 0.0);
  // The transform of an ample pair need not be ample.
  EXPECT_FALSE(is_ample(s, star(s, big)).ample);
}

TEST(Star, BelowInputAndAveragingSandwich) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const QSpace x = random_qspace(2 + t % 5, rng);
    const AmplePair f = random_ample(x, rng);
    const AmplePair s = star(x, f);
    const AmplePair q = q_step(x, f);
    EXPECT_TRUE(pair_leq(s, f));
    EXPECT_TRUE(pair_leq(s, q, 1e-15));
    EXPECT_TRUE(pair_leq(q, f, 1e-15));
    EXPECT_TRUE(is_ample(x, q).ample);
  }
}

TEST(Project, FixedPointsAndSierpinskiShape) {
  const QSpace s = sierpinski();
  for (std::size_t x = 0; x < 2; ++x) expect_pair_near(p_project(s, embed_q(s, x)), embed_q(s, x), 0.0);
  ProjectionStats st;
  const AmplePair p = p_project(s, {{2, 2}, {2, 2}}, 1e-9, 200, &st);
  const double t = p.f1[0];
  EXPECT_GE(t, -1e-9);
  EXPECT_LE(t, 1.0 + 1e-9);
  expect_pair_near(p, AmplePair{{t, 0}, {0, 1 - t}}, 1e-8);
  EXPECT_TRUE(p.certified_minimal);
  EXPECT_TRUE(st.gap_monotone);
  EXPECT_TRUE(in_hull(s, p, 1e-7));
}

TEST(Project, Errors) {
  const QSpace s = sierpinski();
  EXPECT_THROW(p_project(s, {{0, 0}, {0, 0}}), Error);
  try {
    p_project(s, {{2, 2}, {2, 2}}, 1e-9, 2);
    FAIL() << "expected NoConvergence";
  } catch (const NoConvergence& e) {
    EXPECT_EQ(e.iterations(), 2);
    EXPECT_GT(e.residual(), 1e-8);
  }
}

TEST(Project, ContractOnRandomPairs) {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    const QSpace x = random_qspace(2 + t % 6, rng);
    const AmplePair f = random_ample(x, rng);
    const AmplePair g = random_ample(x, rng);
    ProjectionStats st;
    const AmplePair pf = p_project(x, f, kProjectionTol, kDefaultMaxIter, &st);
    const AmplePair pg = p_project(x, g);
    EXPECT_TRUE(st.gap_monotone);
    EXPECT_TRUE(pair_leq(pf, f));
    EXPECT_TRUE(is_ample(x, pf).ample);
    EXPECT_TRUE(in_hull(x, pf, kCertifyTol));
    expect_pair_near(p_project(x, pf), pf, 1e-7);
    EXPECT_LE(dist(pf, pg), dist(f, g) + 1e-9);
    // 1-Lipschitz inequalities of minimal pairs.
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < x.size(); ++b) {
        EXPECT_LE(pf.f1[a] - pf.f1[b], x(b, a) + 1e-9);
        EXPECT_LE(pf.f2[a] - pf.f2[b], x(a, b) + 1e-9);
      }
  }
}

TEST(InHull, Examples) {
  const QSpace s = sierpinski();
  EXPECT_TRUE(in_hull(s, embed_q(s, 1)));
  EXPECT_FALSE(in_hull(s, {{2, 2}, {2, 2}}));
  EXPECT_THROW(in_hull(s, {{0, 0}, {0, 0}}), Error);
}

TEST(Dist, Examples) {
  const QSpace s = sierpinski();
  EXPECT_DOUBLE_EQ(dist(embed_q(s, 0), embed_q(s, 1)), 0.0);
  EXPECT_DOUBLE_EQ(dist(embed_q(s, 1), embed_q(s, 0)), 1.0);
  const AmplePair f{{0.2, 0.7}, {0.1, 0.4}};
  EXPECT_DOUBLE_EQ(dist(f, f), 0.0);
  auto diag = [](double t) { return AmplePair{{t, 1 - t}, {t, 1 - t}}; };
  EXPECT_NEAR(dist(diag(0.2), diag(0.75), PairDistance::Dsym), 0.55, 1e-15);
  EXPECT_THROW(dist(f, AmplePair{{0}, {0}}), Error);
}

TEST(EmbedQ, ExamplesAndIsometry) {
  const QSpace s = sierpinski();
  EXPECT_EQ(embed_q(s, 0).f1, (std::vector<double>{0, 0}));
  EXPECT_EQ(embed_q(s, 0).f2, (std::vector<double>{0, 1}));
  EXPECT_EQ(embed_q(s, 1).f1, (std::vector<double>{1, 0}));
  EXPECT_EQ(embed_q(s, 1).f2, (std::vector<double>{0, 0}));
  const QSpace pt = QSpace::from_rows({{0}});
  EXPECT_EQ(embed_q(pt, 0).f1, std::vector<double>{0});
  EXPECT_THROW(embed_q(s, 2), Error);
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const QSpace x = random_qspace(5, rng);
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b)
        EXPECT_NEAR(dist(embed_q(x, a), embed_q(x, b)), x(a, b), 1e-12);
  }
}

TEST(ExtendIota, Line3Example) {
  const QSpace l = io::demo("line3");
  const SubsetRef y(3, {0, 2});
  const QSpace ly = restrict(l, y);
  const AmplePair sigma = extend_sigma(l, y, embed_q(ly, 0));
  EXPECT_DOUBLE_EQ(sigma.f1[1], 0.0);
  EXPECT_DOUBLE_EQ(sigma.f2[1], 1.0);
  expect_pair_near(extend_iota(l, y, embed_q(ly, 0)), embed_q(l, 0), 1e-12);
}

TEST(ExtendIota, IdentityOnFullSubset) {
  Rng rng(6);
  for (int t = 0; t < 30; ++t) {
    const QSpace x = random_qspace(4, rng);
    const AmplePair f = p_project(x, random_ample(x, rng));
    expect_pair_near(extend_iota(x, SubsetRef::all(4), f), f, 1e-7);
  }
}

TEST(ExtendIota, RestrictsBackAndIsIsometric) {
  Rng rng(7);
  for (int t = 0; t < 40; ++t) {
    const QSpace x = random_qspace(5, rng);
    const SubsetRef y(5, {0, 2, 3});
    const QSpace xy = restrict(x, y);
    const AmplePair f = p_project(xy, random_ample(xy, rng));
    const AmplePair g = p_project(xy, random_ample(xy, rng));
    const AmplePair ef = extend_iota(x, y, f);
    const AmplePair eg = extend_iota(x, y, g);
    EXPECT_TRUE(in_hull(x, ef));
    expect_pair_near(restrict_pair(ef, y), f, 1e-7);
    EXPECT_NEAR(dist(ef, eg, PairDistance::Dsym), dist(f, g, PairDistance::Dsym), 1e-7);
    EXPECT_NEAR(dist(ef, eg), dist(f, g), 1e-7);
  }
}

TEST(ExtendIota, Errors) {
  const QSpace l = io::demo("line3");
  const SubsetRef y(3, {0, 2});
  EXPECT_THROW(extend_iota(l, y, AmplePair{{5, 5}, {5, 5}}), Error);
  EXPECT_THROW(extend_iota(l, y, AmplePair{{0}, {0}}), Error);
}

TEST(LargeSubset, StarLowerBoundAndFourEpsilon) {
  Rng rng(9);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int t = 0; t < 60; ++t) {
    const QSpace x = random_qspace(5, rng);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 5; ++i)
      if (bit(rng)) idx.push_back(i);
    if (idx.empty()) idx.push_back(t % 5);
    const SubsetRef y(5, idx);
    const QSpace xy = restrict(x, y);
    const double eps = largeness_constant(x, y);
    const AmplePair f = p_project(x, random_ample(x, rng));
    const AmplePair fy = restrict_pair(f, y);

    // g <= f|_Y ample on Y  =>  g* >= f|_Y - 2 eps
    std::uniform_real_distribution<double> shrink(0.0, 1.0);
    AmplePair g = fy;
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.f1[i] *= shrink(rng) < 0.5 ? 1.0 : 0.9;
      g.f2[i] *= shrink(rng) < 0.5 ? 1.0 : 0.9;
    }
    if (is_ample(xy, g).ample) {
      const AmplePair gs = star(xy, g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_GE(gs.f1[i], fy.f1[i] - 2 * eps - 1e-7);
        EXPECT_GE(gs.f2[i], fy.f2[i] - 2 * eps - 1e-7);
      }
    }
    const AmplePair back = extend_iota(x, y, p_project(xy, fy));
    EXPECT_LE(dist(f, back, PairDistance::Dsym), 4 * eps + 1e-6);
  }
}

}  // namespace
}  // namespace qhyper
