#include "mgk/coinvariants.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "mgk/error.hpp"

namespace mgk {

bool reflection_generated(const MatrixGroup& group) {
  const std::size_t n = group.rank();
  const Matrix id = Matrix::identity(n);
  std::vector<IntMatrix> reflections;
  for (const auto& e : group.elements())
    if (rank(e.matrix.to_rational() - id) == 1) reflections.push_back(e.matrix);

  std::set<IntMatrix> seen{IntMatrix::identity(n)};
  std::deque<IntMatrix> queue{IntMatrix::identity(n)};
  while (!queue.empty()) {
    IntMatrix m = queue.front();
    queue.pop_front();
    for (const auto& r : reflections) {
      IntMatrix p = m * r;
      if (seen.insert(p).second) queue.push_back(std::move(p));
    }
  }
  return seen.size() == group.order();
}

Polynomial act(const WeylElement& w, const Polynomial& f) { return f.substitute(w.matrix.to_rational()); }

std::vector<Polynomial> invariants_of_degree(const MatrixGroup& group, int d) {
  const std::size_t n = group.rank();
  const auto monos = monomials_of_degree(n, d);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);

  std::vector<Matrix> mats;
  for (const auto& e : group.elements()) mats.push_back(e.matrix.to_rational());
  const Rational inv_order = Rational(1, static_cast<long>(group.order()));

  Matrix rows(monos.size(), monos.size());
  std::size_t used = 0;
  for (const auto& m : monos) {
    Polynomial avg(n);
    const Polynomial pm = Polynomial::monomial(m);
    for (const auto& g : mats) avg += pm.substitute(g);
    avg *= inv_order;
    if (avg.is_zero()) continue;
    for (const auto& [mm, c] : avg.terms()) rows(used, index.at(mm)) = c;
    ++used;
  }
  rref(rows);
  std::vector<Polynomial> out;
  for (std::size_t r = 0; r < monos.size(); ++r) {
    Polynomial p(n);
    for (std::size_t c = 0; c < monos.size(); ++c) p.add_term(monos[c], rows(r, c));
    if (!p.is_zero()) out.push_back(p);
  }
  return out;
}

std::vector<Polynomial> invariant_generators(const MatrixGroup& group, int degree_bound) {
  if (degree_bound <= 0) degree_bound = static_cast<int>(group.order());
  std::vector<Polynomial> out;
  for (int d = 1; d <= degree_bound; ++d) {
    auto inv = invariants_of_degree(group, d);
    out.insert(out.end(), inv.begin(), inv.end());
  }
  return out;
}

Vector CoinvariantAlgebra::coords(const Polynomial& f) const {
  Polynomial r = normal_form(f, gb);
  Vector v(dim);
  for (const auto& [m, c] : r.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m, grevlex_less);
    if (it == basis.end() || *it != m) throw ComputationError("normal form left a non-standard monomial");
    v[static_cast<std::size_t>(it - basis.begin())] = c;
  }
  return v;
}

Matrix CoinvariantAlgebra::mult_by(const IntVector& h) const {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0) m += mult[i] * Rational(h[i]);
  return m;
}

CoinvariantAlgebra coinvariant_algebra(const MatrixGroup& group) {
  const std::size_t n = group.rank();
  const int noether = static_cast<int>(group.order());
  CoinvariantAlgebra alg;
  alg.group = group;
  alg.reflection_generated = reflection_generated(group);

  int bound = std::max<int>(2, static_cast<int>(n));
  std::vector<Polynomial> gens = invariant_generators(group, bound);
  std::optional<std::vector<Monomial>> std_monos;
  for (;;) {
    alg.gb = buchberger(gens.empty() ? std::vector<Polynomial>{Polynomial(n)} : gens);
    std_monos = standard_monomials(alg.gb);
    if (std_monos) break;
    if (bound >= std::max(noether, 2)) throw ComputationError("coinvariant construction failed");
    ++bound;
    auto more = invariants_of_degree(group, bound);
    gens.insert(gens.end(), more.begin(), more.end());
  }
  // The quotient vanishes above its top degree, so invariants of higher
  // degree already lie in the ideal; only degrees up to the top need checking.
  for (;;) {
    int top = 0;
    for (const auto& m : *std_monos) top = std::max(top, degree(m));
    top = std::min(top, noether);
    bool grew = false;
    for (int d = bound + 1; d <= top; ++d) {
      for (auto& p : invariants_of_degree(group, d))
        if (!in_ideal(p, alg.gb)) {
          gens.push_back(std::move(p));
          grew = true;
        }
    }
    bound = std::max(bound, top);
    if (!grew) break;
    alg.gb = buchberger(gens);
    std_monos = standard_monomials(alg.gb);
    if (!std_monos) throw ComputationError("coinvariant construction failed");
  }

  alg.invariant_generators = gens;
  alg.degree_bound = bound;
  alg.basis = *std_monos;
  alg.dim = alg.basis.size();

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vector> cols;
    const Polynomial v = Polynomial::variable(n, i);
    for (const auto& b : alg.basis) cols.push_back(alg.coords(v * Polynomial::monomial(b)));
    alg.mult.push_back(Matrix::from_columns(cols, alg.dim));
  }
  for (const auto& e : group.elements()) {
    std::vector<Vector> cols;
    for (const auto& b : alg.basis) cols.push_back(alg.coords(act(e, Polynomial::monomial(b))));
    alg.action.push_back(Matrix::from_columns(cols, alg.dim));
  }
  return alg;
}

Matrix TruncationAlgebra::projection_to(int m) const {
  if (m < 1 || m > n) throw PreconditionError("projection_to: level out of range");
  std::size_t target = 0;
  while (target < dim && degree(basis[target]) < m) ++target;
  Matrix p(target, dim);
  for (std::size_t i = 0; i < target; ++i) p(i, i) = 1;
  return p;
}

Matrix TruncationAlgebra::mult_by(const IntVector& h) const {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0) m += mult[i] * Rational(h[i]);
  return m;
}

TruncationAlgebra truncation_algebra(std::size_t rank, int n) {
  if (n < 1) throw PreconditionError("truncation_algebra: n must be positive");
  TruncationAlgebra t;
  t.rank = rank;
  t.n = n;
  for (int d = 0; d < n; ++d) {
    auto ms = monomials_of_degree(rank, d);
    t.basis.insert(t.basis.end(), ms.begin(), ms.end());
  }
  t.dim = t.basis.size();
  for (std::size_t i = 0; i < rank; ++i) {
    Matrix m(t.dim, t.dim);
    for (std::size_t c = 0; c < t.dim; ++c) {
      Monomial b = t.basis[c];
      ++b[i];
      if (degree(b) >= n) continue;
      auto it = std::lower_bound(t.basis.begin(), t.basis.end(), b, grevlex_less);
      m(static_cast<std::size_t>(it - t.basis.begin()), c) = 1;
    }
    t.mult.push_back(std::move(m));
  }
  return t;
}

}  // namespace mgk
