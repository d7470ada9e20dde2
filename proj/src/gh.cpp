#include "qhyper/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qhyper {

Correspondence Correspondence::normalized() const {
  Correspondence out = *this;
  std::sort(out.pairs.begin(), out.pairs.end());
  out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
  return out;
}

Correspondence Correspondence::transposed() const {
  Correspondence out{right_size, left_size, {}};
  out.pairs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.pairs.emplace_back(b, a);
  return out;
}

void check_correspondence(const Correspondence& r) {
  std::vector<bool> left(r.left_size, false), right(r.right_size, false);
  for (const auto& [a, b] : r.pairs) {
    if (a >= r.left_size || b >= r.right_size) {
      std::ostringstream os;
      os << "pair (" << a << "," << b << ") out of range";
      throw Error(ErrorCode::NotACorrespondence, os.str());
    }
    left[a] = true;
    right[b] = true;
  }
  for (std::size_t i = 0; i < r.left_size; ++i)
    if (!left[i]) throw Error(ErrorCode::NotACorrespondence, "left point " + std::to_string(i) + " uncovered");
  for (std::size_t j = 0; j < r.right_size; ++j)
    if (!right[j]) throw Error(ErrorCode::NotACorrespondence, "right point " + std::to_string(j) + " uncovered");
}

double distortion(const Matrix& wx, const Matrix& wy, const Correspondence& r) {
  if (r.left_size != wx.size() || r.right_size != wy.size())
    throw Error(ErrorCode::SpaceMismatch, "correspondence sized for different spaces");
  check_correspondence(r);
  double dis = 0.0;
  for (const auto& [x, y] : r.pairs)
    for (const auto& [x2, y2] : r.pairs) dis = std::max(dis, std::abs(wx(x, x2) - wy(y, y2)));
  return dis;
}

double distortion(const QSpace& x, const QSpace& y, const Correspondence& r) {
  return distortion(x.matrix(), y.matrix(), r);
}

namespace {

// Depth-first search over phi: X -> Y followed by psi: Y -> X. Every step
// appends one pair to the relation; the running distortion only grows.
class GhSearch {
 public:
  GhSearch(const Matrix& wx, const Matrix& wy, std::uint64_t budget)
      : wx_(wx), wy_(wy), nx_(wx.size()), ny_(wy.size()), budget_(budget) {
    for (std::size_t x = 0; x < nx_; ++x) slots_.push_back({x, true});
    for (std::size_t y = 0; y < ny_; ++y) slots_.push_back({y, false});
  }

  GhResult run() {
    // The full relation is always a correspondence; start from its distortion.
    Correspondence full{nx_, ny_, {}};
    for (std::size_t x = 0; x < nx_; ++x)
      for (std::size_t y = 0; y < ny_; ++y) full.pairs.emplace_back(x, y);
    best_ = distortion(wx_, wy_, full);
    best_pairs_ = full.pairs;
    if (best_ > 0.0) descend(0, 0.0);

    GhResult res;
    res.value = 0.5 * best_;
    res.best = Correspondence{nx_, ny_, best_pairs_}.normalized();
    res.exact = !exhausted_;
    res.nodes = nodes_;
    return res;
  }

 private:
  struct Slot {
    std::size_t index;
    bool from_left;  // true: choose phi(index); false: choose psi(index)
  };

  std::pair<std::size_t, std::size_t> pair_for(const Slot& s, std::size_t choice) const {
    return s.from_left ? std::make_pair(s.index, choice) : std::make_pair(choice, s.index);
  }

  double added_cost(std::size_t x, std::size_t y) const {
    double c = std::abs(wx_(x, x) - wy_(y, y));
    for (const auto& [a, b] : pairs_) {
      c = std::max(c, std::abs(wx_(x, a) - wy_(y, b)));
      c = std::max(c, std::abs(wx_(a, x) - wy_(b, y)));
    }
    return c;
  }

  // Lower bound on the final distortion: every remaining slot must add
  // some pair, costing at least its cheapest option against current pairs.
  double lookahead(std::size_t depth, double current) const {
    double bound = current;
    for (std::size_t k = depth; k < slots_.size(); ++k) {
      const Slot& s = slots_[k];
      const std::size_t options = s.from_left ? ny_ : nx_;
      double cheapest = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < options && cheapest > bound; ++c) {
        const auto [x, y] = pair_for(s, c);
        cheapest = std::min(cheapest, added_cost(x, y));
      }
      bound = std::max(bound, cheapest);
      if (bound >= best_) break;
    }
    return bound;
  }

  void descend(std::size_t depth, double current) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (depth == slots_.size()) {
      if (current < best_) {
        best_ = current;
        best_pairs_ = pairs_;
      }
      return;
    }
    if (lookahead(depth, current) >= best_) return;

    const Slot& s = slots_[depth];
    const std::size_t options = s.from_left ? ny_ : nx_;
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(options);
    for (std::size_t c = 0; c < options; ++c) {
      const auto [x, y] = pair_for(s, c);
      order.emplace_back(std::max(current, added_cost(x, y)), c);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [cost, c] : order) {
      if (cost >= best_) break;
      pairs_.push_back(pair_for(s, c));
      descend(depth + 1, cost);
      pairs_.pop_back();
      if (exhausted_ || best_ == 0.0) return;
    }
  }

  const Matrix& wx_;
  const Matrix& wy_;
  std::size_t nx_;
  std::size_t ny_;
  std::uint64_t budget_;
  std::vector<Slot> slots_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::pair<std::size_t, std::size_t>> best_pairs_;
  double best_ = 0.0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

GhResult gh_exact(const Matrix& wx, const Matrix& wy, std::uint64_t budget) {
  if (wx.size() == 0 || wy.size() == 0) throw Error(ErrorCode::EmptySubset, "empty space");
  return GhSearch(wx, wy, budget).run();
}

GhResult gh_exact(const QSpace& x, const QSpace& y, std::uint64_t budget) {
  return gh_exact(x.matrix(), y.matrix(), budget);
}

QSpace glue_space(const QSpace& x, const QSpace& y, const Correspondence& r, double eps) {
  if (r.left_size != x.size() || r.right_size != y.size())
    throw Error(ErrorCode::SpaceMismatch, "correspondence sized for different spaces");
  check_correspondence(r);
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  Matrix d(nx + ny);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) d(i, j) = x(i, j);
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < ny; ++j) d(nx + i, nx + j) = y(i, j);
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      double to = std::numeric_limits<double>::infinity();
      double from = std::numeric_limits<double>::infinity();
      for (const auto& [xp, yp] : r.pairs) {
        to = std::min(to, x(a, xp) + eps + y(yp, b));
        from = std::min(from, y(b, yp) + eps + x(xp, a));
      }
      d(a, nx + b) = to;
      d(nx + b, a) = from;
    }
  }
  std::vector<std::string> labels;
  labels.reserve(nx + ny);
  for (const auto& l : x.labels()) labels.push_back("x:" + l);
  for (const auto& l : y.labels()) labels.push_back("y:" + l);

  const AxiomReport rep = validate(d);
  if (!rep.satisfies_M2) {
    for (const Violation& v : rep.violations) {
      if (v.axiom != Axiom::M2) continue;
      std::ostringstream os;
      os << "eps " << eps << " breaks the triangle inequality at (" << v.witness[0] << ","
         << v.witness[1] << ") via " << v.witness[2] << " by " << v.magnitude;
      throw Error(ErrorCode::EpsTooSmall, os.str());
    }
  }
  return QSpace(std::move(labels), std::move(d));
}

RoughIsometryWitness verify_rough_isometry(const std::vector<std::size_t>& phi, const QSpace& x,
                                           const QSpace& y) {
  if (phi.size() != x.size()) throw Error(ErrorCode::LengthMismatch, "map is not total on X");
  for (std::size_t v : phi)
    if (v >= y.size()) throw Error(ErrorCode::IndexOutOfRange, "map leaves Y");
  RoughIsometryWitness w;
  w.map = phi;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b)
      w.eps_embed = std::max(w.eps_embed, std::abs(x(a, b) - y(phi[a], phi[b])));
  for (std::size_t q = 0; q < y.size(); ++q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < x.size(); ++a) best = std::min(best, y.sym(q, phi[a]));
    w.eps_large = std::max(w.eps_large, best);
  }
  w.eps = std::max(w.eps_embed, w.eps_large);
  return w;
}

RoughIsometryWitness rough_isometry_from_correspondence(const QSpace& x, const QSpace& y,
                                                        const Correspondence& r) {
  if (r.left_size != x.size() || r.right_size != y.size())
    throw Error(ErrorCode::SpaceMismatch, "correspondence sized for different spaces");
  check_correspondence(r);
  std::vector<std::size_t> phi(x.size(), y.size());
  for (const auto& [a, b] : r.pairs) phi[a] = std::min(phi[a], b);
  return verify_rough_isometry(phi, x, y);
}

Correspondence correspondence_from_rough_isometry(const QSpace& x, const QSpace& y,
                                                  const RoughIsometryWitness& w) {
  Correspondence r{x.size(), y.size(), {}};
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b)
      if (y.sym(w.map[a], b) <= w.eps) r.pairs.emplace_back(a, b);
  return r;
}

RoughInverse sym_rough_inverse(const QSpace& x, const QSpace& y, const RoughIsometryWitness& w,
                               double tol) {
  RoughInverse inv;
  inv.map.resize(y.size());
  for (std::size_t b = 0; b < y.size(); ++b) {
    std::size_t arg = 0;
    for (std::size_t a = 1; a < x.size(); ++a)
      if (y.sym(b, w.map[a]) < y.sym(b, w.map[arg])) arg = a;
    inv.map[b] = arg;
  }
  for (std::size_t b = 0; b < y.size(); ++b) {
    for (std::size_t c = 0; c < y.size(); ++c)
      inv.nonexpansion = std::max(inv.nonexpansion, x(inv.map[b], inv.map[c]) - y(b, c));
    inv.phi_psi_closeness = std::max(inv.phi_psi_closeness, y.sym(w.map[inv.map[b]], b));
  }
  for (std::size_t a = 0; a < x.size(); ++a)
    inv.psi_phi_closeness = std::max(inv.psi_phi_closeness, x.sym(inv.map[w.map[a]], a));
  inv.within_bounds = inv.nonexpansion <= 3.0 * w.eps + tol &&
                      inv.phi_psi_closeness <= w.eps + tol &&
                      inv.psi_phi_closeness <= 2.0 * w.eps + tol;
  return inv;
}

}  // namespace qhyper
