#include "mgk/groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "mgk/error.hpp"

namespace mgk {

namespace {

class ReductionCounter {
 public:
  explicit ReductionCounter(std::size_t budget) : budget_(budget) {}
  void step() {
    if (++used_ > budget_) throw ComputationError("groebner budget exceeded");
  }

 private:
  std::size_t budget_;
  std::size_t used_ = 0;
};

Polynomial reduce(Polynomial p, const std::vector<Polynomial>& basis, ReductionCounter* counter) {
  const std::size_t n = p.nvars();
  Polynomial remainder(n);
  while (!p.is_zero()) {
    const Monomial lm = p.leading_monomial();
    const Rational lc = p.leading_coeff();
    const Polynomial* divisor = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && divides(g.leading_monomial(), lm)) {
        divisor = &g;
        break;
      }
    }
    if (divisor) {
      if (counter) counter->step();
      p -= divisor->times_monomial(quotient(lm, divisor->leading_monomial()), lc / divisor->leading_coeff());
    } else {
      remainder.add_term(lm, lc);
      p.add_term(lm, -lc);
    }
  }
  return remainder;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  return f.times_monomial(quotient(l, f.leading_monomial()), f.leading_coeff().inverse()) -
         g.times_monomial(quotient(l, g.leading_monomial()), g.leading_coeff().inverse());
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

}  // namespace

bool GroebnerBasis::is_unit_ideal() const {
  return gens.size() == 1 && gens.front().degree() == 0;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& input, std::size_t budget) {
  if (input.empty()) throw PreconditionError("buchberger: empty generator list");
  const std::size_t n = input.front().nvars();
  ReductionCounter counter(budget);

  std::vector<Polynomial> g;
  for (const auto& p : input) {
    if (p.nvars() != n) throw PreconditionError("buchberger: mixed variable counts");
    if (!p.is_zero()) g.push_back(p.monic());
  }

  using Pair = std::pair<std::size_t, std::size_t>;
  std::set<Pair> pending;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.emplace(i, j);

  auto is_pending = [&](std::size_t a, std::size_t b) {
    return pending.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  while (!pending.empty()) {
    // Normal selection: the pair with the grevlex-smallest lcm.
    auto best = pending.begin();
    Monomial best_lcm = lcm(g[best->first].leading_monomial(), g[best->second].leading_monomial());
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Monomial l = lcm(g[it->first].leading_monomial(), g[it->second].leading_monomial());
      if (grevlex_less(l, best_lcm)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);

    const Monomial& li = g[i].leading_monomial();
    const Monomial& lj = g[j].leading_monomial();
    if (coprime(li, lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (divides(g[k].leading_monomial(), best_lcm) && !is_pending(i, k) && !is_pending(j, k)) chain = true;
    }
    if (chain) continue;

    Polynomial r = reduce(s_polynomial(g[i], g[j]), g, &counter);
    if (r.is_zero()) continue;
    g.push_back(r.monic());
    const std::size_t idx = g.size() - 1;
    for (std::size_t k = 0; k < idx; ++k) pending.emplace(k, idx);
  }

  // Minimize, then interreduce.
  std::vector<Polynomial> minimal;
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
      if (a == b) continue;
      const auto& la = g[a].leading_monomial();
      const auto& lb = g[b].leading_monomial();
      if (divides(lb, la) && (la != lb || b < a)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[a]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<Polynomial> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) others.push_back(minimal[b]);
    Polynomial head = Polynomial::monomial(minimal[a].leading_monomial(), 1);
    Polynomial tail = minimal[a] - head;
    reduced.push_back(head + reduce(tail, others, &counter));
  }
  std::sort(reduced.begin(), reduced.end(), [](const Polynomial& x, const Polynomial& y) {
    return grevlex_less(x.leading_monomial(), y.leading_monomial());
  });
  return GroebnerBasis{n, std::move(reduced)};
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
  if (p.nvars() != gb.nvars) throw PreconditionError("normal_form: variable count mismatch");
  return reduce(p, gb.gens, nullptr);
}

std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis& gb) {
  const std::size_t n = gb.nvars;
  if (gb.is_unit_ideal()) return std::vector<Monomial>{};
  std::vector<int> bound(n, -1);
  for (const auto& p : gb.gens) {
    const Monomial& lm = p.leading_monomial();
    std::size_t nonzero = 0, var = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (lm[i] > 0) {
        ++nonzero;
        var = i;
      }
    if (nonzero == 1 && (bound[var] < 0 || lm[var] < bound[var])) bound[var] = lm[var];
  }
  for (int b : bound)
    if (b < 0) return std::nullopt;

  std::vector<Monomial> out;
  Monomial m(n, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      for (const auto& p : gb.gens)
        if (divides(p.leading_monomial(), m)) return;
      out.push_back(m);
      return;
    }
    for (int e = 0; e < bound[i]; ++e) {
      m[i] = e;
      self(self, i + 1);
    }
    m[i] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), grevlex_less);
  return out;
}

}  // namespace mgk
