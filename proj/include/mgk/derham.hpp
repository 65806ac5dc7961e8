#pragma once

#include <cstddef>
#include <vector>

#include "mgk/gamma.hpp"
#include "mgk/rational.hpp"
#include "mgk/rootdata.hpp"

namespace mgk {

// theta(f) = x f' + (c x + s) f on Q[x^{+-1}], so theta(x^k) = (k + s) x^k + c x^{k+1}.
struct ConnectionDatum {
  Rational c;
  Rational s;
};

struct CohomologyReport {
  std::size_t dim_ker = 0;
  std::size_t dim_coker = 0;
  int window = 0;
  bool stabilized = false;
};

inline constexpr int kDefaultDeRhamWindow = 24;
inline constexpr int kMinDeRhamWindow = 8;

// theta restricted to span{x^k : -N <= k <= N}, landing in exponents up to
// N + 1 (N when c = 0). Escalates the window up to 2N; throws
// ComputationError("window exhausted") if the dimensions never settle.
CohomologyReport gm_exp_kummer_cohomology(const Rational& c, const Rational& s, int window = kDefaultDeRhamWindow);
CohomologyReport gm_exp_kummer_cohomology(const ConnectionDatum& d, int window = kDefaultDeRhamWindow);

struct MultiplierReport {
  std::vector<CohomologyReport> factors;  // one per lambda_i, s_i = <lambda_i, -mu0>
  std::size_t product = 0;
  bool stabilized = false;
};

// Throws PreconditionError when c = 0.
MultiplierReport multiplier_dimension(const GammaData& g, const TorusPoint& xi, int window = kDefaultDeRhamWindow);

struct KoszulReport {
  std::vector<std::size_t> dims;  // Koszul degrees 0, 1, 2; dims[2] = coker (x) coker
  std::size_t product_of_factors = 0;
  bool factorization_ok = false;
  bool stabilized = false;
  int window = 0;
};

inline constexpr int kDefaultKoszulWindow = 8;

KoszulReport gm2_koszul_check(const Rational& c, const Rational& s1, const Rational& s2,
                              int window = kDefaultKoszulWindow);

}  // namespace mgk
