#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mgk/matrix.hpp"
#include "mgk/rational.hpp"

namespace mgk {

using IntVector = std::vector<long>;
using QVector = std::vector<Rational>;

// Small square integer matrix acting on the cocharacter lattice Z^n.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  long& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  long operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  const std::vector<long>& entries() const { return a_; }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend IntVector operator*(const IntMatrix& x, const IntVector& v);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend bool operator<(const IntMatrix& x, const IntMatrix& y) { return x.a_ < y.a_; }

  IntMatrix transpose() const;
  long determinant() const;
  // Inverse over Z; throws unless det = +-1.
  IntMatrix inverse() const;
  Matrix to_rational() const;
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::vector<long> a_;
};

// Group element acting on t (cocharacters) by `matrix` and on the dual
// space (weights, torus points of the dual torus) by `dual` = matrix^{-T}.
struct WeylElement {
  IntMatrix matrix;
  IntMatrix dual;
  std::vector<int> word;  // generator indices, applied left to right

  int sign() const { return static_cast<int>(matrix.determinant()); }
  IntVector act(const IntVector& cocharacter) const { return matrix * cocharacter; }
  QVector act_dual(const QVector& mu) const;
};

WeylElement make_element(IntMatrix m, std::vector<int> word = {});

// Finite matrix group with closed multiplication table lookup.
class MatrixGroup {
 public:
  MatrixGroup() = default;
  // Elements must be closed under multiplication and contain the identity.
  MatrixGroup(std::size_t rank, std::vector<WeylElement> elements);

  std::size_t rank() const { return rank_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<WeylElement>& elements() const { return elements_; }
  const WeylElement& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const IntMatrix& m) const;
  std::size_t identity_index() const;
  std::size_t product(std::size_t i, std::size_t j) const;  // element i * element j
  std::size_t inverse(std::size_t i) const;
  bool contains(const IntMatrix& m) const { return index_of(m).has_value(); }

 private:
  std::size_t rank_ = 0;
  std::vector<WeylElement> elements_;
  std::map<IntMatrix, std::size_t> lookup_;
};

// Descriptor for build_root_datum; mirrors the config schema.
struct RootDatumSpec {
  std::string preset;  // GL, SL, A, B, C, D, G2, product, explicit
  int rank = 0;
  std::vector<IntMatrix> generators;  // explicit preset only
  std::vector<RootDatumSpec> factors;  // product preset only
};

struct RootDatum {
  std::size_t rank = 0;
  std::string preset;
  std::vector<IntMatrix> weyl_generators;
  std::vector<IntVector> coroots;  // empty when no root system is attached
};

inline constexpr std::size_t kDefaultGroupCap = 10'000;

// Throws InputError("invalid root datum: ...") for unsupported presets,
// non-involutive generators, generators with det != +-1, or groups that
// fail to close within the cap.
RootDatum build_root_datum(const RootDatumSpec& spec, std::size_t cap = kDefaultGroupCap);

// Breadth-first closure from the identity; deterministic order with
// shortest generator words. Throws InputError("group too large") past cap.
std::vector<WeylElement> enumerate_weyl(const RootDatum& rd, std::size_t cap = kDefaultGroupCap);
MatrixGroup weyl_group(const RootDatum& rd, std::size_t cap = kDefaultGroupCap);

// A point of the dual torus: the coset rep + Z^n.
struct TorusPoint {
  QVector rep;
  friend bool operator==(const TorusPoint& a, const TorusPoint& b);
};

bool is_integral(const QVector& v);
QVector sub(const QVector& a, const QVector& b);
QVector add(const QVector& a, const QVector& b);
QVector to_q(const IntVector& v);
Rational pair(const IntVector& cochar, const QVector& mu);

// W_xi = { w : w(mu0) - mu0 in Z^n }, in the enumeration order of `w`.
MatrixGroup stabilizer(const MatrixGroup& w, const TorusPoint& xi);

bool sigma_positive(const IntVector& sigma, const IntVector& lambda);

struct FamilyReport {
  bool w_stable = false;
  bool all_sigma_positive = false;
  bool pr_onto = false;
  std::size_t span_rank = 0;
  std::vector<std::string> elementary_divisors;  // of the lambda matrix
  std::vector<std::string> diagnostics;
};

FamilyReport check_lambda_family(const MatrixGroup& w, const std::vector<IntVector>& lambdas,
                                 const IntVector& sigma);

// Smith normal form diagonal (nonzero entries) of an integer matrix.
std::vector<mpz_class> elementary_divisors(const std::vector<IntVector>& rows);

using Permutation = std::vector<int>;
int permutation_sign(const Permutation& p);

inline constexpr std::size_t kDefaultLiftCap = 720;

struct WPrime {
  std::vector<IntVector> distinct;
  std::vector<std::size_t> multiplicities;
  std::vector<std::vector<std::size_t>> blocks;  // A_1..A_k as index sets of {0..r-1}
  std::vector<std::size_t> block_of;             // index -> block
  mpz_class s_lambda_order;
  mpz_class order;  // |W'| counted by enumerating lifts
  bool image_check = false;
  std::size_t image_size = 0;
  std::size_t s_k_lambda_order = 0;

  // All eta with lambda_{eta(i)} = w(lambda_i), lexicographic order, at most cap.
  std::vector<Permutation> lifts(const WeylElement& w, const std::vector<IntVector>& lambdas,
                                 std::size_t cap = kDefaultLiftCap) const;
};

// Throws InputError("family not W-stable") when the multiset is not W-invariant.
WPrime wprime(const MatrixGroup& w, const std::vector<IntVector>& lambdas);

}  // namespace mgk
