#include "qhyper/random.hpp"

#include <algorithm>

namespace qhyper {

Matrix shortest_path_closure(Matrix w) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) w(i, i) = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w(i, j) = std::min(w(i, j), w(i, k) + w(k, j));
  return w;
}

QSpace random_qspace(std::size_t n, Rng& rng, double scale, double zero_prob) {
  std::uniform_real_distribution<double> value(0.0, scale);
  std::bernoulli_distribution zero(zero_prob);
  Matrix w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = value(rng);
      w(i, j) = (i == j || zero(rng)) ? 0.0 : v;
    }
  return QSpace(shortest_path_closure(std::move(w)));
}

QSpace perturb_qspace(const QSpace& x, Rng& rng, double noise) {
  std::uniform_real_distribution<double> factor(1.0 - noise, 1.0 + noise);
  Matrix w = x.matrix();
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (i != j) w(i, j) *= factor(rng);
  return QSpace(x.labels(), shortest_path_closure(std::move(w)));
}

QSpace permute(const QSpace& x, const std::vector<std::size_t>& perm) {
  const std::size_t n = x.size();
  Matrix d(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[perm[i]] = x.labels()[i];
    for (std::size_t j = 0; j < n; ++j) d(perm[i], perm[j]) = x(i, j);
  }
  return QSpace(std::move(labels), std::move(d));
}

}  // namespace qhyper
