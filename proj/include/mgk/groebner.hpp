#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mgk/polynomial.hpp"

namespace mgk {

// Reduced Groebner basis in grevlex, generators monic and sorted by leading
// monomial (ascending).
struct GroebnerBasis {
  std::size_t nvars = 0;
  std::vector<Polynomial> gens;

  bool is_unit_ideal() const;
};

inline constexpr std::size_t kDefaultGroebnerBudget = 1'000'000;

// Buchberger's algorithm with the normal selection strategy and both
// criteria. Throws ComputationError("groebner budget exceeded") when more
// than `budget` single reduction steps are needed.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens,
                         std::size_t budget = kDefaultGroebnerBudget);

// Fully reduced remainder of multivariate division by the basis.
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

inline bool in_ideal(const Polynomial& p, const GroebnerBasis& gb) { return normal_form(p, gb).is_zero(); }

// Monomials not divisible by any leading monomial, grevlex ascending;
// nullopt when the quotient ring is infinite-dimensional.
std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis& gb);

}  // namespace mgk
