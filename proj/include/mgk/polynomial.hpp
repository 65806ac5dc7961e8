#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mgk/matrix.hpp"
#include "mgk/rational.hpp"

namespace mgk {

// Exponent vector of a monomial in v_1..v_n.
using Monomial = std::vector<int>;

int degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial operator+(const Monomial& a, const Monomial& b);
// b - a; requires divides(a, b).
Monomial quotient(const Monomial& b, const Monomial& a);
std::string monomial_string(const Monomial& m);

// Graded reverse lexicographic order, strict "a comes before b" when a > b.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};
bool grevlex_less(const Monomial& a, const Monomial& b);

// All monomials of total degree d in n variables, grevlex ascending.
std::vector<Monomial> monomials_of_degree(std::size_t n, int d);

// Polynomial over Q in a fixed number of variables; terms sorted so the
// leading term (grevlex) comes first. No zero coefficients are stored.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrevlexGreater>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);
  // sum_i coeffs[i] * v_i
  static Polynomial linear_form(const std::vector<Rational>& coeffs);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Monomial& leading_monomial() const;
  const Rational& leading_coeff() const;
  int degree() const;
  bool is_homogeneous() const;
  Rational coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial times_monomial(const Monomial& m, const Rational& c) const;
  Polynomial pow(int e) const;

  // Linear change of variables v_j -> sum_i g(i, j) v_i.
  Polynomial substitute(const Matrix& g) const;

  Polynomial monic() const;
  std::string str() const;

 private:
  std::size_t nvars_;
  Terms terms_;
};

}  // namespace mgk
