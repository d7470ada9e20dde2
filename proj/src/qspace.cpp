#include "qhyper/qspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace qhyper {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      std::ostringstream os;
      os << "row " << i << " has " << rows[i].size() << " entries, expected " << n;
      throw Error(ErrorCode::NonSquareMatrix, os.str());
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<std::vector<double>> Matrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::M1: return "M1";
    case Axiom::M1Star: return "M1*";
    case Axiom::M2: return "M2";
    case Axiom::M3: return "M3";
  }
  return "?";
}

AxiomReport validate(const Matrix& d, double tol) {
  const std::size_t n = d.size();
  if (n == 0) throw Error(ErrorCode::NonSquareMatrix, "empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d(i, j);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") is not finite";
        throw Error(ErrorCode::NonFiniteEntry, os.str());
      }
      if (v < 0.0) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << v << " is negative";
        throw Error(ErrorCode::NegativeEntry, os.str());
      }
    }
  }

  AxiomReport rep;
  rep.triangle_tol = tol;
  auto record = [&rep](Axiom a, std::vector<std::size_t> w, double mag) {
    ++rep.violation_count;
    if (rep.violations.size() < AxiomReport::kMaxWitnesses)
      rep.violations.push_back({a, std::move(w), mag});
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) {
      rep.satisfies_M1star = false;
      record(Axiom::M1Star, {i, i}, d(i, i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) == 0.0 && d(j, i) == 0.0) {
        rep.satisfies_M1 = false;
        record(Axiom::M1, {i, j}, 0.0);
      }
      if (d(i, j) != d(j, i)) {
        rep.satisfies_M3 = false;
        record(Axiom::M3, {i, j}, std::abs(d(i, j) - d(j, i)));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double excess = d(i, j) - (d(i, k) + d(k, j));
        if (excess > tol) {
          rep.satisfies_M2 = false;
          record(Axiom::M2, {i, j, k}, excess);
        }
      }
    }
  }
  rep.is_metric = rep.satisfies_M1star && rep.satisfies_M1 && rep.satisfies_M2 && rep.satisfies_M3;
  return rep;
}

AxiomReport validate(const std::vector<std::vector<double>>& rows, double tol) {
  return validate(Matrix::from_rows(rows), tol);
}

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

}  // namespace

QSpace::QSpace(std::vector<std::string> labels, Matrix d, double tol)
    : labels_(std::move(labels)), d_(std::move(d)), report_(validate(d_, tol)) {
  if (labels_.size() != d_.size())
    throw Error(ErrorCode::LengthMismatch, "label count differs from matrix size");
  if (!report_.is_pseudo_quasi_metric()) {
    std::ostringstream os;
    os << "not a pseudo-quasi-metric:";
    for (const auto& v : report_.violations) {
      if (v.axiom != Axiom::M1Star && v.axiom != Axiom::M2) continue;
      os << ' ' << to_string(v.axiom) << '(';
      for (std::size_t k = 0; k < v.witness.size(); ++k) os << (k ? "," : "") << v.witness[k];
      os << ")=" << v.magnitude;
      break;
    }
    throw Error(ErrorCode::ValidationFailed, os.str());
  }
}

QSpace::QSpace(Matrix d, double tol) : QSpace(default_labels(d.size()), std::move(d), tol) {}

QSpace QSpace::from_rows(const std::vector<std::vector<double>>& rows, double tol) {
  return QSpace(Matrix::from_rows(rows), tol);
}

double QSpace::sym(std::size_t i, std::size_t j) const noexcept {
  return std::max(d_(i, j), d_(j, i));
}

double QSpace::diameter() const noexcept {
  double r = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) r = std::max(r, d_(i, j));
  return r;
}

SubsetRef::SubsetRef(std::size_t parent_size, std::vector<std::size_t> indices)
    : parent_size_(parent_size), indices_(std::move(indices)) {
  if (indices_.empty()) throw Error(ErrorCode::EmptySubset, "subset has no points");
  std::sort(indices_.begin(), indices_.end());
  if (indices_.back() >= parent_size_) {
    std::ostringstream os;
    os << "index " << indices_.back() << " outside a space of " << parent_size_ << " points";
    throw Error(ErrorCode::IndexOutOfRange, os.str());
  }
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw Error(ErrorCode::SubsetMismatch, "duplicate index in subset");
}

SubsetRef SubsetRef::all(std::size_t parent_size) {
  std::vector<std::size_t> idx(parent_size);
  for (std::size_t i = 0; i < parent_size; ++i) idx[i] = i;
  return SubsetRef(parent_size, std::move(idx));
}

QSpace dualize(const QSpace& x, DualMode mode) {
  const Matrix t = x.matrix().transposed();
  if (mode == DualMode::Conjugate) return QSpace(x.labels(), t, x.report().triangle_tol);
  Matrix s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s(i, j) = std::max(x(i, j), t(i, j));
  return QSpace(x.labels(), std::move(s), x.report().triangle_tol);
}

namespace {

void check_parent(const QSpace& x, const SubsetRef& y) {
  if (y.parent_size() != x.size())
    throw Error(ErrorCode::SubsetMismatch, "subset refers to a space of a different size");
}

}  // namespace

QSpace restrict(const QSpace& x, const SubsetRef& y) {
  check_parent(x, y);
  const std::size_t m = y.size();
  Matrix d(m);
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = x.labels()[y[a]];
    for (std::size_t b = 0; b < m; ++b) d(a, b) = x(y[a], y[b]);
  }
  return QSpace(std::move(labels), std::move(d), x.report().triangle_tol);
}

QSpace product_sup(const QSpace& x, const QSpace& y, std::size_t cap) {
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  if (nx > cap / ny) {
    std::ostringstream os;
    os << nx << " x " << ny << " points exceeds the cap of " << cap;
    throw Error(ErrorCode::SizeOverflow, os.str());
  }
  const std::size_t n = nx * ny;
  Matrix d(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t p = i * ny + j;
      labels[p] = "(" + x.labels()[i] + "," + y.labels()[j] + ")";
      for (std::size_t k = 0; k < nx; ++k)
        for (std::size_t l = 0; l < ny; ++l) d(p, k * ny + l) = std::max(x(i, k), y(j, l));
    }
  }
  return QSpace(std::move(labels), std::move(d),
                std::max(x.report().triangle_tol, y.report().triangle_tol));
}

namespace {

// max over a in A of min over b in B of dist(b, a)
template <typename Dist>
double directed_hausdorff(const SubsetRef& a, const SubsetRef& b, Dist dist) {
  double worst = 0.0;
  for (std::size_t ai : a.indices()) {
    double best = dist(b[0], ai);
    for (std::size_t bi : b.indices()) best = std::min(best, dist(bi, ai));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff(const QSpace& x, const SubsetRef& a, const SubsetRef& b, HausdorffMode mode) {
  check_parent(x, a);
  check_parent(x, b);
  if (mode == HausdorffMode::Quasi)
    return directed_hausdorff(a, b, [&x](std::size_t i, std::size_t j) { return x(i, j); });
  auto ds = [&x](std::size_t i, std::size_t j) { return x.sym(i, j); };
  return std::max(directed_hausdorff(a, b, ds), directed_hausdorff(b, a, ds));
}

double largeness_constant(const QSpace& x, const SubsetRef& y) {
  check_parent(x, y);
  double worst = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    double best = x.sym(p, y[0]);
    for (std::size_t q : y.indices()) best = std::min(best, x.sym(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

double metric_convexity_defect(const QSpace& x) {
  const std::size_t n = x.size();
  auto pos = [](double v) { return v > 0.0 ? v : 0.0; };
  double defect = 0.0;
  std::vector<double> cand;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double dab = x(a, b);
      if (dab <= 0.0) continue;
      // For each centre z the defect at split r is max((d(a,z)-r)+, (d(z,b)-(dab-r))+),
      // a convex piecewise-linear function of r. The minimum over z is
      // maximised at an endpoint or where a falling branch of one centre
      // meets a rising branch of another.
      cand.assign({0.0, dab});
      for (std::size_t z = 0; z < n; ++z) {
        cand.push_back(x(a, z));
        cand.push_back(dab - x(z, b));
        for (std::size_t w = 0; w < n; ++w) cand.push_back(0.5 * (x(a, z) + dab - x(w, b)));
      }
      for (double r : cand) {
        r = std::clamp(r, 0.0, dab);
        const double s = dab - r;
        double best = std::max(pos(x(a, 0) - r), pos(x(0, b) - s));
        for (std::size_t z = 1; z < n; ++z)
          best = std::min(best, std::max(pos(x(a, z) - r), pos(x(z, b) - s)));
        defect = std::max(defect, best);
      }
    }
  }
  return defect;
}

double asym_defect(const QSpace& x) {
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) r = std::max(r, std::abs(x(i, j) - x(j, i)));
  return 0.5 * r;
}

std::optional<std::vector<std::size_t>> is_isometric(const QSpace& x, const QSpace& y,
                                                     double tol) {
  const std::size_t n = x.size();
  if (y.size() != n) return std::nullopt;

  auto profile = [](const QSpace& s, std::size_t i) {
    std::vector<double> out(s.size()), in(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      out[j] = s(i, j);
      in[j] = s(j, i);
    }
    std::sort(out.begin(), out.end());
    std::sort(in.begin(), in.end());
    out.insert(out.end(), in.begin(), in.end());
    return out;
  };
  std::vector<std::vector<double>> px(n), py(n);
  for (std::size_t i = 0; i < n; ++i) {
    px[i] = profile(x, i);
    py[i] = profile(y, i);
  }
  auto profiles_match = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < px[i].size(); ++k)
      if (std::abs(px[i][k] - py[j][k]) > tol) return false;
    return true;
  };
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (profiles_match(i, j)) candidates[i].push_back(j);
    if (candidates[i].empty()) return std::nullopt;
  }

  std::vector<std::size_t> pi(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j : candidates[i]) {
      if (used[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        ok = std::abs(x(i, k) - y(j, pi[k])) <= tol && std::abs(x(k, i) - y(pi[k], j)) <= tol;
      }
      if (!ok) continue;
      pi[i] = j;
      used[j] = true;
      if (assign(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return pi;
}

}  // namespace qhyper
