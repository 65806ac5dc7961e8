#include "mgk/derham.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "mgk/error.hpp"
#include "mgk/matrix.hpp"

namespace mgk {

namespace {

struct WindowDims {
  std::size_t ker = 0;
  std::size_t coker = 0;
};

int top_shift(const Rational& c) { return c.is_zero() ? 0 : 1; }

// Columns x^k for k in [-n, n]; rows x^j for j in [-n, n + top].
std::vector<SparseRow> theta_columns(const Rational& c, const Rational& s, int n) {
  const int top = top_shift(c);
  std::vector<SparseRow> cols;
  for (int k = -n; k <= n; ++k) {
    SparseRow col;
    Rational diag = Rational(k) + s;
    if (!diag.is_zero()) col.emplace_back(static_cast<std::size_t>(k + n), diag);
    if (top && k + 1 <= n + top) col.emplace_back(static_cast<std::size_t>(k + 1 + n), c);
    cols.push_back(std::move(col));
  }
  return cols;
}

WindowDims window_dims(const Rational& c, const Rational& s, int n) {
  const std::size_t domain = static_cast<std::size_t>(2 * n + 1);
  const std::size_t codomain = domain + static_cast<std::size_t>(top_shift(c));
  const std::size_t r = sparse_rank(theta_columns(c, s, n));
  return {domain - r, codomain - r};
}

bool certified(const Rational& s, int n) {
  // Every integer -s must sit strictly inside the window.
  return Rational(n) >= s.abs() + Rational(1);
}

void check_window(int window) {
  if (window < kMinDeRhamWindow)
    throw PreconditionError("window must be at least " + std::to_string(kMinDeRhamWindow));
}

}  // namespace

CohomologyReport gm_exp_kummer_cohomology(const Rational& c, const Rational& s, int window) {
  check_window(window);
  for (int n = window; n <= 2 * window; ++n) {
    WindowDims a = window_dims(c, s, n);
    WindowDims b = window_dims(c, s, n + 5);
    if (a.ker == b.ker && a.coker == b.coker && certified(s, n))
      return CohomologyReport{a.ker, a.coker, n, true};
  }
  throw ComputationError("window exhausted");
}

CohomologyReport gm_exp_kummer_cohomology(const ConnectionDatum& d, int window) {
  return gm_exp_kummer_cohomology(d.c, d.s, window);
}

MultiplierReport multiplier_dimension(const GammaData& g, const TorusPoint& xi, int window) {
  if (g.c.is_zero()) throw PreconditionError("multiplier_dimension: c must be nonzero");
  if (xi.rep.size() != g.weyl.rank()) throw InputError("multiplier_dimension: xi has wrong rank");
  MultiplierReport rep;
  rep.product = 1;
  rep.stabilized = true;
  QVector neg;
  for (const auto& m : xi.rep) neg.push_back(-m);
  for (const auto& l : g.lambdas) {
    CohomologyReport f = gm_exp_kummer_cohomology(g.c, pair(l, neg), window);
    rep.product *= f.dim_coker;
    rep.stabilized = rep.stabilized && f.stabilized;
    rep.factors.push_back(f);
  }
  return rep;
}

namespace {

// Koszul complex of (theta_1, theta_2) on windowed Laurent polynomials in
// two variables: K0 -> K1 = K1a + K1b -> K2, with
//   K0  = [-n, n] x [-n, n]
//   K1a = [-n, n+t] x [-n, n]     (image of theta_1)
//   K1b = [-n, n] x [-n, n+t]     (image of theta_2)
//   K2  = [-n, n+t] x [-n, n+t]
std::array<std::size_t, 3> koszul_dims(const Rational& c, const Rational& s1, const Rational& s2, int n) {
  const int t = top_shift(c);
  const long lo = -n;
  const long w0 = 2 * n + 1;
  const long w1 = w0 + t;
  const std::size_t k0 = static_cast<std::size_t>(w0 * w0);
  const std::size_t k1a = static_cast<std::size_t>(w1 * w0);
  const std::size_t k1b = static_cast<std::size_t>(w0 * w1);
  const std::size_t k2 = static_cast<std::size_t>(w1 * w1);

  // theta_1 acts on the first exponent, theta_2 on the second.
  auto push = [&](SparseRow& col, std::size_t offset, long i, long j, long wj, bool first,
                  const Rational& sgn) {
    const Rational& s = first ? s1 : s2;
    const long k = first ? i : j;
    Rational diag = (Rational(k) + s) * sgn;
    auto at = [&](long a, long b) { return offset + static_cast<std::size_t>((a - lo) * wj + (b - lo)); };
    if (!diag.is_zero()) col.emplace_back(at(i, j), diag);
    if (t) {
      if (first) col.emplace_back(at(i + 1, j), c * sgn);
      else col.emplace_back(at(i, j + 1), c * sgn);
    }
  };

  std::vector<SparseRow> d0;
  for (long i = lo; i <= n; ++i)
    for (long j = lo; j <= n; ++j) {
      SparseRow col;
      push(col, 0, i, j, w0, true, Rational(1));
      push(col, k1a, i, j, w1, false, Rational(1));
      d0.push_back(std::move(col));
    }
  std::vector<SparseRow> d1;
  // (g_a, g_b) -> theta_2 g_a - theta_1 g_b
  for (long i = lo; i <= n + t; ++i)
    for (long j = lo; j <= n; ++j) {
      SparseRow col;
      push(col, 0, i, j, w1, false, Rational(1));
      d1.push_back(std::move(col));
    }
  for (long i = lo; i <= n; ++i)
    for (long j = lo; j <= n + t; ++j) {
      SparseRow col;
      push(col, 0, i, j, w1, true, Rational(-1));
      d1.push_back(std::move(col));
    }
  const std::size_t r0 = sparse_rank(d0);
  const std::size_t r1 = sparse_rank(d1);
  return {k0 - r0, k1a + k1b - r0 - r1, k2 - r1};
}

}  // namespace

KoszulReport gm2_koszul_check(const Rational& c, const Rational& s1, const Rational& s2, int window) {
  check_window(window);
  KoszulReport rep;
  for (int n = window; n <= 2 * window; ++n) {
    auto a = koszul_dims(c, s1, s2, n);
    auto b = koszul_dims(c, s1, s2, n + 5);
    if (a == b && certified(s1, n) && certified(s2, n)) {
      rep.dims.assign(a.begin(), a.end());
      rep.window = n;
      rep.stabilized = true;
      break;
    }
  }
  if (!rep.stabilized) throw ComputationError("window exhausted");
  const std::size_t f1 = gm_exp_kummer_cohomology(c, s1, std::max(window, kMinDeRhamWindow)).dim_coker;
  const std::size_t f2 = gm_exp_kummer_cohomology(c, s2, std::max(window, kMinDeRhamWindow)).dim_coker;
  rep.product_of_factors = f1 * f2;
  rep.factorization_ok = rep.dims[2] == rep.product_of_factors;
  return rep;
}

}  // namespace mgk
