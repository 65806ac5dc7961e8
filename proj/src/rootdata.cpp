#include "mgk/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "mgk/error.hpp"

namespace mgk {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  n_ = rows.size();
  for (const auto& r : rows) {
    if (r.size() != n_) throw PreconditionError("IntMatrix literal must be square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.n_ != y.n_) throw PreconditionError("IntMatrix *: size mismatch");
  IntMatrix m(x.n_);
  for (std::size_t i = 0; i < x.n_; ++i)
    for (std::size_t k = 0; k < x.n_; ++k) {
      long a = x(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < x.n_; ++j) m(i, j) += a * y(k, j);
    }
  return m;
}

IntVector operator*(const IntMatrix& x, const IntVector& v) {
  if (x.n_ != v.size()) throw PreconditionError("IntMatrix * vector: size mismatch");
  IntVector out(x.n_, 0);
  for (std::size_t i = 0; i < x.n_; ++i)
    for (std::size_t j = 0; j < x.n_; ++j) out[i] += x(i, j) * v[j];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

long IntMatrix::determinant() const { return mgk::determinant(to_rational()).to_long(); }

IntMatrix IntMatrix::inverse() const {
  auto inv = mgk::inverse(to_rational());
  if (!inv) throw PreconditionError("IntMatrix::inverse: singular matrix");
  IntMatrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      if (!(*inv)(i, j).is_integer()) throw PreconditionError("IntMatrix::inverse: not unimodular");
      m(i, j) = (*inv)(i, j).to_long();
    }
  return m;
}

Matrix IntMatrix::to_rational() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

QVector WeylElement::act_dual(const QVector& mu) const {
  const std::size_t n = dual.size();
  if (mu.size() != n) throw PreconditionError("act_dual: dimension mismatch");
  QVector out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dual(i, j) != 0) out[i] += Rational(dual(i, j)) * mu[j];
  return out;
}

WeylElement make_element(IntMatrix m, std::vector<int> word) {
  IntMatrix d = m.inverse().transpose();
  return WeylElement{std::move(m), std::move(d), std::move(word)};
}

MatrixGroup::MatrixGroup(std::size_t rank, std::vector<WeylElement> elements)
    : rank_(rank), elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].matrix.size() != rank_) throw PreconditionError("MatrixGroup: element of wrong rank");
    lookup_.emplace(elements_[i].matrix, i);
  }
  if (lookup_.size() != elements_.size()) throw PreconditionError("MatrixGroup: duplicate elements");
  if (!index_of(IntMatrix::identity(rank_))) throw PreconditionError("MatrixGroup: identity missing");
}

std::optional<std::size_t> MatrixGroup::index_of(const IntMatrix& m) const {
  auto it = lookup_.find(m);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t MatrixGroup::identity_index() const { return *index_of(IntMatrix::identity(rank_)); }

std::size_t MatrixGroup::product(std::size_t i, std::size_t j) const {
  auto k = index_of(elements_[i].matrix * elements_[j].matrix);
  if (!k) throw PreconditionError("MatrixGroup: not closed under multiplication");
  return *k;
}

std::size_t MatrixGroup::inverse(std::size_t i) const {
  auto k = index_of(elements_[i].matrix.inverse());
  if (!k) throw PreconditionError("MatrixGroup: not closed under inversion");
  return *k;
}

namespace {

using CartanMatrix = std::vector<std::vector<long>>;

CartanMatrix cartan(char type, int r) {
  CartanMatrix a(r, std::vector<long>(r, 0));
  for (int i = 0; i < r; ++i) a[i][i] = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) a[i][i + 1] = a[i + 1][i] = -1;
  };
  switch (type) {
    case 'A':
      chain(r);
      break;
    case 'B':  // alpha_r short
      chain(r);
      if (r >= 2) {
        a[r - 1][r - 2] = -2;
        a[r - 2][r - 1] = -1;
      }
      break;
    case 'C':  // alpha_r long
      chain(r);
      if (r >= 2) {
        a[r - 1][r - 2] = -1;
        a[r - 2][r - 1] = -2;
      }
      break;
    case 'D':
      chain(r - 1);
      a[r - 3][r - 1] = a[r - 1][r - 3] = -1;
      break;
    case 'G':  // alpha_1 short
      a[0][1] = -1;
      a[1][0] = -3;
      break;
    default:
      throw InputError("invalid root datum: unknown Cartan type");
  }
  return a;
}

// Simple reflections on the coroot lattice with basis the simple coroots:
// s_i(a_j^v) = a_j^v - A_{ji} a_i^v with A_{ij} = <a_i^v, a_j>.
std::vector<IntMatrix> cartan_reflections(const CartanMatrix& a) {
  const std::size_t r = a.size();
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < r; ++i) {
    IntMatrix s = IntMatrix::identity(r);
    for (std::size_t j = 0; j < r; ++j) s(i, j) -= a[j][i];
    gens.push_back(s);
  }
  return gens;
}

std::vector<IntVector> orbit_closure(const std::vector<IntMatrix>& gens, std::vector<IntVector> seeds,
                                     std::size_t cap) {
  std::set<IntVector> seen(seeds.begin(), seeds.end());
  std::deque<IntVector> queue(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    IntVector v = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      IntVector u = g * v;
      if (seen.insert(u).second) {
        if (seen.size() > cap) throw InputError("invalid root datum: root orbit does not close");
        queue.push_back(std::move(u));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

RootDatum build_unchecked(const RootDatumSpec& spec, std::size_t cap) {
  RootDatum rd;
  rd.preset = spec.preset;
  const std::string& p = spec.preset;
  auto need_rank = [&](int lo) {
    if (spec.rank < lo)
      throw InputError("invalid root datum: preset " + p + " needs rank >= " + std::to_string(lo));
  };
  if (p == "GL") {
    need_rank(1);
    const auto n = static_cast<std::size_t>(spec.rank);
    rd.rank = n;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      IntMatrix s = IntMatrix::identity(n);
      s(i, i) = s(i + 1, i + 1) = 0;
      s(i, i + 1) = s(i + 1, i) = 1;
      rd.weyl_generators.push_back(s);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        IntVector v(n, 0);
        v[i] = 1;
        v[j] = -1;
        rd.coroots.push_back(v);
      }
    std::sort(rd.coroots.begin(), rd.coroots.end());
    return rd;
  }
  if (p == "SL" || p == "A" || p == "B" || p == "C" || p == "D" || p == "G2") {
    char type = p == "SL" ? 'A' : p[0];
    int r = p == "SL" ? spec.rank - 1 : spec.rank;
    if (p == "SL") need_rank(2);
    else if (p == "B" || p == "C") need_rank(2);
    else if (p == "D") need_rank(3);
    else if (p == "G2") {
      if (spec.rank != 0 && spec.rank != 2) throw InputError("invalid root datum: G2 has rank 2");
      r = 2;
    } else need_rank(1);
    auto a = cartan(type, r);
    rd.rank = static_cast<std::size_t>(r);
    rd.weyl_generators = cartan_reflections(a);
    std::vector<IntVector> simple;
    for (int i = 0; i < r; ++i) {
      IntVector v(r, 0);
      v[i] = 1;
      simple.push_back(v);
    }
    rd.coroots = orbit_closure(rd.weyl_generators, simple, cap);
    return rd;
  }
  if (p == "product") {
    if (spec.factors.empty()) throw InputError("invalid root datum: product needs factors");
    std::vector<RootDatum> parts;
    for (const auto& f : spec.factors) {
      parts.push_back(build_unchecked(f, cap));
      rd.rank += parts.back().rank;
    }
    std::size_t off = 0;
    for (const auto& part : parts) {
      for (const auto& g : part.weyl_generators) {
        IntMatrix big = IntMatrix::identity(rd.rank);
        for (std::size_t i = 0; i < part.rank; ++i)
          for (std::size_t j = 0; j < part.rank; ++j) big(off + i, off + j) = g(i, j);
        rd.weyl_generators.push_back(big);
      }
      for (const auto& c : part.coroots) {
        IntVector v(rd.rank, 0);
        std::copy(c.begin(), c.end(), v.begin() + static_cast<std::ptrdiff_t>(off));
        rd.coroots.push_back(v);
      }
      off += part.rank;
    }
    std::sort(rd.coroots.begin(), rd.coroots.end());
    return rd;
  }
  if (p == "explicit" || p.empty()) {
    if (spec.generators.empty() && spec.rank < 1)
      throw InputError("invalid root datum: explicit datum needs generators or a rank");
    rd.preset = "explicit";
    rd.rank = spec.generators.empty() ? static_cast<std::size_t>(spec.rank) : spec.generators.front().size();
    if (rd.rank == 0) throw InputError("invalid root datum: rank must be positive");
    rd.weyl_generators = spec.generators;
    return rd;
  }
  throw InputError("invalid root datum: unsupported preset \"" + p + "\"");
}

}  // namespace

RootDatum build_root_datum(const RootDatumSpec& spec, std::size_t cap) {
  RootDatum rd = build_unchecked(spec, cap);
  const IntMatrix id = IntMatrix::identity(rd.rank);
  for (std::size_t k = 0; k < rd.weyl_generators.size(); ++k) {
    const auto& g = rd.weyl_generators[k];
    const std::string which = "generator " + std::to_string(k);
    if (g.size() != rd.rank) throw InputError("invalid root datum: " + which + " has wrong size");
    if (!(g * g == id)) throw InputError("invalid root datum: " + which + " is not an involution");
    long d = g.determinant();
    if (d != 1 && d != -1) throw InputError("invalid root datum: " + which + " has det " + std::to_string(d));
  }
  // Closure must terminate within the cap; enumerate_weyl reports overflow.
  auto elements = enumerate_weyl(rd, cap);
  if (!rd.coroots.empty()) {
    std::set<IntVector> roots(rd.coroots.begin(), rd.coroots.end());
    for (const auto& g : rd.weyl_generators)
      for (const auto& c : rd.coroots)
        if (!roots.count(g * c)) throw InputError("invalid root datum: generators do not preserve the coroots");
  }
  return rd;
}

std::vector<WeylElement> enumerate_weyl(const RootDatum& rd, std::size_t cap) {
  std::vector<WeylElement> out;
  std::map<IntMatrix, std::size_t> seen;
  out.push_back(make_element(IntMatrix::identity(rd.rank)));
  seen.emplace(out.back().matrix, 0);
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (std::size_t k = 0; k < rd.weyl_generators.size(); ++k) {
      IntMatrix m = out[head].matrix * rd.weyl_generators[k];
      if (seen.count(m)) continue;
      if (out.size() >= cap)
        throw InputError("group too large: closure exceeds cap of " + std::to_string(cap) + " elements");
      std::vector<int> word = out[head].word;
      word.push_back(static_cast<int>(k));
      seen.emplace(m, out.size());
      out.push_back(make_element(std::move(m), std::move(word)));
    }
  }
  return out;
}

MatrixGroup weyl_group(const RootDatum& rd, std::size_t cap) {
  return MatrixGroup(rd.rank, enumerate_weyl(rd, cap));
}

bool is_integral(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_integer(); });
}

QVector sub(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw PreconditionError("vector -: size mismatch");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

QVector add(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw PreconditionError("vector +: size mismatch");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVector to_q(const IntVector& v) { return QVector(v.begin(), v.end()); }

Rational pair(const IntVector& cochar, const QVector& mu) {
  if (cochar.size() != mu.size()) throw PreconditionError("pairing: dimension mismatch");
  Rational s;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (cochar[i] != 0) s += Rational(cochar[i]) * mu[i];
  return s;
}

bool operator==(const TorusPoint& a, const TorusPoint& b) { return is_integral(sub(a.rep, b.rep)); }

MatrixGroup stabilizer(const MatrixGroup& w, const TorusPoint& xi) {
  if (xi.rep.size() != w.rank()) throw PreconditionError("stabilizer: torus point has wrong rank");
  std::vector<WeylElement> kept;
  for (const auto& e : w.elements())
    if (is_integral(sub(e.act_dual(xi.rep), xi.rep))) kept.push_back(e);
  return MatrixGroup(w.rank(), std::move(kept));
}

bool sigma_positive(const IntVector& sigma, const IntVector& lambda) {
  if (sigma.size() != lambda.size()) throw PreconditionError("sigma_positive: dimension mismatch");
  long s = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) s += sigma[i] * lambda[i];
  return s > 0;
}

std::vector<mpz_class> elementary_divisors(const std::vector<IntVector>& rows_in) {
  if (rows_in.empty()) return {};
  const std::size_t m = rows_in.size(), n = rows_in.front().size();
  std::vector<std::vector<mpz_class>> a(m, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows_in[i][j];

  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Pivot: smallest nonzero |entry| in the trailing block.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) return diag;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  // Enforce the divisibility chain.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      mpz_class g = gcd(diag[i], diag[j]);
      mpz_class l = diag[i] * diag[j] / g;
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

FamilyReport check_lambda_family(const MatrixGroup& w, const std::vector<IntVector>& lambdas,
                                 const IntVector& sigma) {
  if (lambdas.empty()) throw PreconditionError("check_lambda_family: empty family");
  FamilyReport rep;
  for (const auto& l : lambdas) {
    if (l.size() != w.rank()) throw PreconditionError("check_lambda_family: cocharacter of wrong rank");
    if (std::all_of(l.begin(), l.end(), [](long x) { return x == 0; }))
      throw PreconditionError("check_lambda_family: zero cocharacter");
  }

  std::vector<IntVector> sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());
  rep.w_stable = true;
  for (const auto& e : w.elements()) {
    std::vector<IntVector> moved;
    for (const auto& l : lambdas) moved.push_back(e.act(l));
    std::sort(moved.begin(), moved.end());
    if (moved != sorted) {
      rep.w_stable = false;
      rep.diagnostics.push_back("element " + e.matrix.str() + " moves the multiset");
      break;
    }
  }

  rep.all_sigma_positive = true;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (!sigma_positive(sigma, lambdas[i])) {
      rep.all_sigma_positive = false;
      rep.diagnostics.push_back("lambda[" + std::to_string(i) + "] is not sigma-positive");
    }

  auto divisors = elementary_divisors(lambdas);
  rep.span_rank = divisors.size();
  bool unit = true;
  for (const auto& d : divisors) {
    rep.elementary_divisors.push_back(d.get_str());
    if (d != 1) unit = false;
  }
  rep.pr_onto = rep.span_rank == w.rank() && unit;
  if (!rep.pr_onto) rep.diagnostics.push_back("image subtorus is proper (span rank " + std::to_string(rep.span_rank) + ")");
  return rep;
}

int permutation_sign(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

namespace {

mpz_class factorial(std::size_t n) {
  mpz_class f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

}  // namespace

std::vector<Permutation> WPrime::lifts(const WeylElement& w, const std::vector<IntVector>& lambdas,
                                       std::size_t cap) const {
  const std::size_t r = lambdas.size();
  // target block of each source block
  std::vector<std::size_t> target(distinct.size());
  for (std::size_t l = 0; l < distinct.size(); ++l) {
    IntVector img = w.act(distinct[l]);
    auto it = std::find(distinct.begin(), distinct.end(), img);
    if (it == distinct.end()) throw InputError("family not W-stable");
    target[l] = static_cast<std::size_t>(it - distinct.begin());
  }
  std::vector<Permutation> out;
  Permutation eta(r, -1);
  std::vector<bool> used(r, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (out.size() >= cap) return;
    if (i == r) {
      out.push_back(eta);
      return;
    }
    for (std::size_t j : blocks[target[block_of[i]]]) {
      if (used[j]) continue;
      used[j] = true;
      eta[i] = static_cast<int>(j);
      self(self, i + 1);
      used[j] = false;
    }
  };
  rec(rec, 0);
  return out;
}

WPrime wprime(const MatrixGroup& w, const std::vector<IntVector>& lambdas) {
  if (lambdas.empty()) throw PreconditionError("wprime: empty family");
  WPrime wp;
  wp.block_of.resize(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    auto it = std::find(wp.distinct.begin(), wp.distinct.end(), lambdas[i]);
    std::size_t l = static_cast<std::size_t>(it - wp.distinct.begin());
    if (it == wp.distinct.end()) {
      wp.distinct.push_back(lambdas[i]);
      wp.multiplicities.push_back(0);
      wp.blocks.emplace_back();
    }
    ++wp.multiplicities[l];
    wp.blocks[l].push_back(i);
    wp.block_of[i] = l;
  }
  const std::size_t k = wp.distinct.size();
  wp.s_lambda_order = 1;
  for (auto m : wp.multiplicities) wp.s_lambda_order *= factorial(m);

  std::set<Permutation> image;
  for (const auto& e : w.elements()) {
    Permutation tau(k);
    for (std::size_t l = 0; l < k; ++l) {
      auto it = std::find(wp.distinct.begin(), wp.distinct.end(), e.act(wp.distinct[l]));
      if (it == wp.distinct.end() || wp.multiplicities[static_cast<std::size_t>(it - wp.distinct.begin())] != wp.multiplicities[l])
        throw InputError("family not W-stable");
      tau[l] = static_cast<int>(it - wp.distinct.begin());
    }
    image.insert(tau);
  }
  wp.image_size = image.size();
  std::map<std::size_t, std::size_t> mult_classes;
  for (auto m : wp.multiplicities) ++mult_classes[m];
  mpz_class skl = 1;
  for (const auto& [m, count] : mult_classes) skl *= factorial(count);
  wp.s_k_lambda_order = skl.get_ui();
  wp.image_check = wp.image_size == wp.s_k_lambda_order;

  // |W'| = number of pairs (w, eta); enumerate lifts when small enough.
  wp.order = 0;
  for (const auto& e : w.elements()) {
    if (wp.s_lambda_order <= static_cast<long>(kDefaultLiftCap)) {
      wp.order += static_cast<unsigned long>(wp.lifts(e, lambdas).size());
    } else {
      wp.order += wp.s_lambda_order;
    }
  }
  return wp;
}

}  // namespace mgk
