#pragma once

// Finite quasi-metric spaces: storage, axiom checks and elementary
// constructions (duals, restrictions, sup-products, Hausdorff distances,
// convexity and asymmetry defects, isometry search).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qhyper/error.hpp"

namespace qhyper {

/// Triangle slack used when classifying a matrix.
inline constexpr double kTriangleTol = 1e-9;

/// Dense row-major square matrix of doubles. No axioms are implied; this is
/// also the "network" representation accepted by the distortion routines.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

  /// Throws NonSquareMatrix on ragged or non-square input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }

  Matrix transposed() const;
  std::vector<std::vector<double>> rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

enum class Axiom { M1, M1Star, M2, M3 };

const char* to_string(Axiom axiom);

struct Violation {
  Axiom axiom;
  /// (i, j) for M1/M1*/M3; (i, j, k) for M2 meaning d(i,j) > d(i,k) + d(k,j).
  std::vector<std::size_t> witness;
  double magnitude;
};

struct AxiomReport {
  bool satisfies_M1 = true;      // T0: d(x,y) = d(y,x) = 0 only for x = y
  bool satisfies_M1star = true;  // zero diagonal
  bool satisfies_M2 = true;      // triangle inequality within tolerance
  bool satisfies_M3 = true;      // symmetry
  bool is_metric = true;
  double triangle_tol = kTriangleTol;
  /// Capped at kMaxWitnesses entries; `violation_count` is the true total.
  std::vector<Violation> violations;
  std::size_t violation_count = 0;

  static constexpr std::size_t kMaxWitnesses = 100;

  /// M1* and M2 hold.
  bool is_pseudo_quasi_metric() const noexcept { return satisfies_M1star && satisfies_M2; }
  /// M1*, M1 and M2 hold.
  bool is_quasi_metric() const noexcept { return is_pseudo_quasi_metric() && satisfies_M1; }
};

/// Classify a candidate matrix. Throws NonSquareMatrix, NegativeEntry or
/// NonFiniteEntry when the input is not even a candidate distance.
AxiomReport validate(const Matrix& d, double tol = kTriangleTol);
AxiomReport validate(const std::vector<std::vector<double>>& rows, double tol = kTriangleTol);

/// A finite (pseudo-)quasi-metric space. Construction validates; anything
/// failing M1* or M2 is rejected with ValidationFailed. Spaces failing M1
/// (pseudo spaces) are accepted and flagged in the report.
class QSpace {
 public:
  QSpace(std::vector<std::string> labels, Matrix d, double tol = kTriangleTol);
  /// Labels default to "0", "1", ...
  explicit QSpace(Matrix d, double tol = kTriangleTol);
  static QSpace from_rows(const std::vector<std::vector<double>>& rows,
                          double tol = kTriangleTol);

  std::size_t size() const noexcept { return d_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_(i, j); }
  /// Symmetrised distance max(d(i,j), d(j,i)).
  double sym(std::size_t i, std::size_t j) const noexcept;

  const Matrix& matrix() const noexcept { return d_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const AxiomReport& report() const noexcept { return report_; }
  double diameter() const noexcept;

  friend bool operator==(const QSpace& a, const QSpace& b) {
    return a.labels_ == b.labels_ && a.d_ == b.d_;
  }

 private:
  std::vector<std::string> labels_;
  Matrix d_;
  AxiomReport report_;
};

/// Strictly increasing, non-empty, in-range list of point indices.
class SubsetRef {
 public:
  /// Sorts and validates; throws EmptySubset, IndexOutOfRange, or
  /// SubsetMismatch on duplicates.
  SubsetRef(std::size_t parent_size, std::vector<std::size_t> indices);
  static SubsetRef all(std::size_t parent_size);

  std::size_t parent_size() const noexcept { return parent_size_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::size_t operator[](std::size_t k) const noexcept { return indices_[k]; }

 private:
  std::size_t parent_size_;
  std::vector<std::size_t> indices_;
};

enum class DualMode { Conjugate, Symmetrize };
enum class HausdorffMode { Quasi, Sym };

QSpace dualize(const QSpace& x, DualMode mode);
QSpace restrict(const QSpace& x, const SubsetRef& y);

inline constexpr std::size_t kDefaultProductCap = 10'000;
/// Sup-product; point (i, j) has index i * |Y| + j.
QSpace product_sup(const QSpace& x, const QSpace& y, std::size_t cap = kDefaultProductCap);

/// Quasi mode: smallest r with A inside the closed r-neighbourhood of B,
/// i.e. max over a of min over b of d(b, a). Sym mode: two-sided Hausdorff
/// distance for the symmetrised distance.
double hausdorff(const QSpace& x, const SubsetRef& a, const SubsetRef& b, HausdorffMode mode);

/// Least eps such that every point is within symmetrised distance eps of Y.
double largeness_constant(const QSpace& x, const SubsetRef& y);

/// Worst failure of metric convexity over all pairs and splits r + s = d(x,y).
/// Zero iff the space is metrically convex.
double metric_convexity_defect(const QSpace& x);

/// max |d(x,y) - d(y,x)| / 2.
double asym_defect(const QSpace& x);

/// A bijection pi with d_Y(pi x, pi y) = d_X(x, y) within tol, if one exists.
std::optional<std::vector<std::size_t>> is_isometric(const QSpace& x, const QSpace& y,
                                                     double tol = 1e-9);

}  // namespace qhyper
