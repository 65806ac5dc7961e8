#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mgk/mellin.hpp"
#include "mgk/rootdata.hpp"

namespace mgk {

// Kernel datum of the gamma sheaf: cocharacters lambda_1..lambda_r, c != 0,
// a character sigma making every lambda_i sigma-positive, and the W' data.
struct GammaData {
  MatrixGroup weyl;
  std::vector<IntVector> lambdas;
  Rational c;
  IntVector sigma;
  WPrime wprime;
  FamilyReport family;
};

// Throws InputError when c = 0, some lambda is not sigma-positive, or the
// multiset is not W-stable.
GammaData make_gamma_data(MatrixGroup weyl, std::vector<IntVector> lambdas, Rational c, IntVector sigma);

// lambda(mu) = a + n with 0 <= a < 1 and n integral.
struct ExponentDecomposition {
  Rational value;
  Rational a;
  long n = 0;
};

ExponentDecomposition decompose_exponent(const IntVector& lambda, const QVector& mu);

// In Q[x^{+-1}] e^{cx} (x)_{Q[v]} V with v acting by `a`, the class of
// x^from e (x) w equals x^to e (x) R w; returns R. Moving down uses
// x^{k+1} e (x) w = c^{-1} x^k e (x) (a - k) w, moving up inverts it.
// Throws ComputationError("reduction singularity") on a singular step.
Matrix exponent_shift(const Matrix& a, const Rational& c, long from, long to);

struct SingleReduction {
  ExponentDecomposition exponent;
  MonodromicModule result;
  std::map<long, Matrix> table;  // class of x^k e (x) v = generator (x) table[k] v
  bool spectral_ok = true;
  std::vector<std::string> diagnostics;
};

// One factor Psi(lambda, c) * M on the Mellin side.
SingleReduction gamma_reduce_single(const IntVector& lambda, const Rational& c, const MonodromicModule& m,
                                    int window = 3);

enum class Convention { kUnsigned, kSigned };
std::string to_string(Convention c);

struct GammaOptions {
  Convention convention = Convention::kUnsigned;
  std::size_t lift_cap = kDefaultLiftCap;
  int window = 3;
};

struct GammaConvolutionReport {
  MultiCosetModule result;
  // Per component: kappa in generator coordinates (the identity) and kappa
  // read from the reference exponent one step below the generator.
  std::vector<Matrix> kappa;
  std::vector<Matrix> kappa_reference;
  std::vector<std::vector<BlockMap>> transported_u;  // first lift, per element and component
  bool iso_ok = true;
  bool equivariance_ok = true;
  bool eta_independent = true;
  std::size_t lifts_checked = 0;
  std::vector<std::string> diagnostics;

  bool passed() const { return iso_ok && equivariance_ok && eta_independent; }
};

GammaConvolutionReport gamma_convolve(const GammaData& g, const MultiCosetModule& f, const GammaOptions& opts = {});
// Throws PreconditionError if the structure group does not fix the coset.
GammaConvolutionReport gamma_convolve(const GammaData& g, const MonodromicModule& m,
                                      const EquivariantStructure& s, const GammaOptions& opts = {});

struct KeyPropReport {
  GammaConvolutionReport convolution;
  ContractReport contract;
  std::size_t stabilizer_order = 0;
  std::size_t fiber_dim = 0;
  bool passed = false;
};

KeyPropReport check_key_prop(const GammaData& g, const TorusPoint& xi, const GammaOptions& opts = {});

struct TowerLevel {
  int n = 0;
  std::size_t dim = 0;
  bool iso_ok = false;
  bool projection_ok = true;  // vacuous at n = 1
  std::vector<std::string> diagnostics;
};

struct TowerReport {
  std::vector<TowerLevel> levels;
  bool passed = false;
};

TowerReport check_unipotent_tower(const GammaData& g, const TorusPoint& xi, int n_max, const GammaOptions& opts = {});

struct EThetaReport {
  GammaConvolutionReport convolution;
  ContractReport contract;
  std::size_t components = 0;
  std::size_t total_dim = 0;
  bool passed = false;
};

EThetaReport check_e_theta(const GammaData& g, const TorusPoint& xi, const GammaOptions& opts = {});

}  // namespace mgk
