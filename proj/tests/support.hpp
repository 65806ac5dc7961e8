#pragma once

#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mgk/matrix.hpp"
#include "mgk/mellin.hpp"
#include "mgk/rational.hpp"
#include "mgk/rootdata.hpp"

namespace mgk::testing {

inline Rational q(const std::string& s) { return Rational::parse(s); }

inline QVector qv(std::initializer_list<const char*> xs) {
  QVector out;
  for (const char* x : xs) out.push_back(Rational::parse(x));
  return out;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(97531);
  return gen;
}

inline Rational random_rational(std::mt19937& g, long range = 9) {
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  return Rational(num(g), den(g));
}

// Plain Gauss-Jordan over Q, kept separate from the library's elimination.
inline std::size_t oracle_rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::vector<std::vector<Rational>> rows_of(const Matrix& m) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

using Mat = std::vector<std::vector<long>>;

inline Mat mul(const Mat& a, const Mat& b) {
  Mat c(a.size(), std::vector<long>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Closure of a generating set by repeated multiplication, without the
// library's BFS or lookup tables.
inline std::size_t oracle_group_order(const std::vector<Mat>& gens) {
  const std::size_t n = gens.at(0).size();
  Mat id(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  std::set<Mat> seen{id};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mat> cur(seen.begin(), seen.end());
    for (const auto& x : cur)
      for (const auto& g : gens)
        if (seen.insert(mul(x, g)).second) grew = true;
  }
  return seen.size();
}

inline Mat to_mat(const IntMatrix& m) {
  Mat out(m.size(), std::vector<long>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m(i, j);
  return out;
}

inline bool all_zero(const std::vector<std::size_t>& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

inline Matrix random_invertible(std::mt19937& g, std::size_t d) {
  for (;;) {
    Matrix p(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) p(i, j) = random_rational(g, 3);
    if (!determinant(p).is_zero()) return p;
  }
}

// N_i = mu_i + a_i J + b_i J^2 for one random nilpotent J, conjugated by a
// random change of basis, so the operators commute by construction.
inline MonodromicModule random_module(std::mt19937& g, const QVector& mu, std::size_t d) {
  std::uniform_int_distribution<int> coin(0, 2);
  Matrix j(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r + 1; c < d; ++c)
      if (coin(g)) j(r, c) = random_rational(g, 3);
  Matrix p = random_invertible(g, d);
  Matrix pinv = *inverse(p);
  MonodromicModule m;
  m.coset_rep = mu;
  m.fiber_dim = d;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    Matrix n = j * random_rational(g, 2) + j * j * random_rational(g, 2);
    m.nu.push_back((p * n * pinv).shifted(mu[i]));
  }
  return m;
}

}  // namespace mgk::testing
