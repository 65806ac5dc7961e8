#include "mgk/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mgk/error.hpp"

namespace mgk {

int degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
  return m;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = b[i] - a[i];
  return m;
}

std::string monomial_string(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "v" + std::to_string(i + 1);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

bool GrevlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = degree(a), db = degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool grevlex_less(const Monomial& a, const Monomial& b) { return GrevlexGreater{}(b, a); }

std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial m(n, 0);
  // Enumerate compositions of d into n parts.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), grevlex_less);
  return out;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Monomial m(nvars, 0);
  m.at(i) = 1;
  return monomial(m);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.size());
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::linear_form(const std::vector<Rational>& coeffs) {
  Polynomial p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m(coeffs.size(), 0);
    m[i] = 1;
    p.add_term(m, coeffs[i]);
  }
  return p;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw PreconditionError("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coeff() const {
  if (terms_.empty()) throw PreconditionError("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

int Polynomial::degree() const { return terms_.empty() ? -1 : mgk::degree(terms_.begin()->first); }

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = degree();
  for (const auto& [m, c] : terms_)
    if (mgk::degree(m) != d) return false;
  return true;
}

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != nvars_) throw PreconditionError("monomial has wrong number of variables");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw PreconditionError("polynomial +: variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw PreconditionError("polynomial -: variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw PreconditionError("polynomial *: variable count mismatch");
  Polynomial p(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) p.add_term(ma + mb, ca * cb);
  return p;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
  Polynomial p(nvars_);
  if (c.is_zero()) return p;
  for (const auto& [mm, cc] : terms_) p.terms_.emplace_hint(p.terms_.end(), mm + m, cc * c);
  return p;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::substitute(const Matrix& g) const {
  if (g.rows() != nvars_ || g.cols() != nvars_) throw PreconditionError("substitute: matrix shape");
  std::vector<Polynomial> images;
  images.reserve(nvars_);
  for (std::size_t j = 0; j < nvars_; ++j) images.push_back(linear_form(g.column(j)));
  // Cache powers of each image linear form.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power = [&](std::size_t j, int e) -> const Polynomial& {
    auto& pw = powers[j];
    if (pw.empty()) pw.push_back(constant(nvars_, 1));
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[j]);
    return pw[e];
  };
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(nvars_, c);
    for (std::size_t j = 0; j < nvars_; ++j)
      if (m[j] > 0) t = t * power(j, m[j]);
    out += t;
  }
  return out;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * leading_coeff().inverse();
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a.sign() < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      a = a.abs();
    }
    bool unit_monomial = mgk::degree(m) == 0;
    if (a != Rational(1) || unit_monomial) {
      os << a;
      if (!unit_monomial) os << '*';
    }
    if (!unit_monomial) os << monomial_string(m);
    first = false;
  }
  return os.str();
}

}  // namespace mgk
