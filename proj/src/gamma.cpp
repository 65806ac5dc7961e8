#include "mgk/gamma.hpp"

#include <algorithm>

#include "mgk/error.hpp"

namespace mgk {

namespace {

long floor_long(const Rational& x) {
  mpz_class f = x.floor();
  if (!f.fits_slong_p()) throw ComputationError("exponent out of machine range");
  return f.get_si();
}

std::vector<long> generator_exponents(const std::vector<IntVector>& lambdas, const QVector& mu) {
  std::vector<long> e;
  for (const auto& l : lambdas) e.push_back(decompose_exponent(l, mu).n);
  return e;
}

// kappa from reference exponents (generator - 1 in every slot) to the generator.
Matrix reference_kappa(const std::vector<IntVector>& lambdas, const Rational& c, const MonodromicModule& m) {
  Matrix k = Matrix::identity(m.dim());
  for (const auto& l : lambdas) {
    long n = decompose_exponent(l, m.coset_rep).n;
    k = exponent_shift(m.nu_of(l), c, n - 1, n) * k;
  }
  return k;
}

}  // namespace

GammaData make_gamma_data(MatrixGroup weyl, std::vector<IntVector> lambdas, Rational c, IntVector sigma) {
  if (c.is_zero()) throw InputError("gamma data: c must be nonzero");
  if (lambdas.empty()) throw InputError("gamma data: empty cocharacter family");
  if (sigma.size() != weyl.rank()) throw InputError("gamma data: sigma has wrong rank");
  for (const auto& l : lambdas) {
    if (l.size() != weyl.rank()) throw InputError("gamma data: cocharacter has wrong rank");
    if (std::all_of(l.begin(), l.end(), [](long x) { return x == 0; }))
      throw InputError("gamma data: cocharacters must be nontrivial");
  }
  GammaData g;
  g.family = check_lambda_family(weyl, lambdas, sigma);
  if (!g.family.all_sigma_positive) throw InputError("gamma data: cocharacters are not all sigma-positive");
  if (!g.family.w_stable) throw InputError("family not W-stable");
  g.wprime = wprime(weyl, lambdas);
  g.weyl = std::move(weyl);
  g.lambdas = std::move(lambdas);
  g.c = std::move(c);
  g.sigma = std::move(sigma);
  return g;
}

ExponentDecomposition decompose_exponent(const IntVector& lambda, const QVector& mu) {
  ExponentDecomposition d;
  d.value = pair(lambda, mu);
  d.n = floor_long(d.value);
  d.a = d.value - Rational(d.n);
  return d;
}

Matrix exponent_shift(const Matrix& a, const Rational& c, long from, long to) {
  if (c.is_zero()) throw PreconditionError("exponent_shift: c must be nonzero");
  const std::size_t d = a.rows();
  Matrix r = Matrix::identity(d);
  const Rational cinv = c.inverse();
  for (long k = to; k < from; ++k) r = (a.shifted(Rational(-k)) * cinv) * r;
  for (long k = from; k < to; ++k) {
    auto inv = inverse(a.shifted(Rational(-k)));
    if (!inv) throw ComputationError("reduction singularity at exponent " + std::to_string(k));
    r = (*inv * c) * r;
  }
  return r;
}

SingleReduction gamma_reduce_single(const IntVector& lambda, const Rational& c, const MonodromicModule& m,
                                    int window) {
  if (c.is_zero()) throw PreconditionError("gamma_reduce_single: c must be nonzero");
  SingleReduction out;
  out.exponent = decompose_exponent(lambda, m.coset_rep);
  out.result = m;
  const Matrix a = m.nu_of(lambda);
  const long n = out.exponent.n;
  if (!is_nilpotent(a.shifted(-out.exponent.value))) {
    out.spectral_ok = false;
    out.diagnostics.push_back("N(lambda) has an eigenvalue other than lambda(mu0)");
  }
  // The generator x^n e^{cx} spans the tensor exactly when a - k is
  // invertible for every k < n.
  for (long k = n - window; k < n; ++k) {
    if (rank(a.shifted(Rational(-k))) != a.rows()) {
      out.spectral_ok = false;
      out.diagnostics.push_back("N(lambda) - " + std::to_string(k) + " is singular");
    }
  }
  for (long k = n - window; k <= n + window; ++k) out.table.emplace(k, exponent_shift(a, c, k, n));
  return out;
}

std::string to_string(Convention c) { return c == Convention::kSigned ? "signed" : "unsigned"; }

GammaConvolutionReport gamma_convolve(const GammaData& g, const MonodromicModule& m, const EquivariantStructure& s,
                                      const GammaOptions& opts) {
  for (const auto& w : s.group.elements())
    if (!is_integral(sub(w.act_dual(m.coset_rep), m.coset_rep)))
      throw PreconditionError("gamma_convolve: structure group does not fix the coset");
  return gamma_convolve(g, MultiCosetModule::from_single(m, s), opts);
}

GammaConvolutionReport gamma_convolve(const GammaData& g, const MultiCosetModule& f, const GammaOptions& opts) {
  GammaConvolutionReport rep;
  rep.result = f;
  const std::size_t ncomp = f.components.size();

  std::vector<std::vector<long>> gens;
  for (std::size_t j = 0; j < ncomp; ++j) {
    const auto& comp = f.components[j];
    for (const auto& l : g.lambdas) {
      SingleReduction red = gamma_reduce_single(l, g.c, comp, opts.window);
      if (!red.spectral_ok) {
        rep.iso_ok = false;
        for (auto& d : red.diagnostics) rep.diagnostics.push_back("component " + std::to_string(j) + ": " + d);
      }
    }
    gens.push_back(generator_exponents(g.lambdas, comp.coset_rep));
    rep.kappa.push_back(Matrix::identity(comp.dim()));
    Matrix kr = reference_kappa(g.lambdas, g.c, comp);
    auto check = verify_morphism(kr, comp, comp);
    if (!check.passed || rank(kr) != comp.dim()) {
      rep.iso_ok = false;
      rep.diagnostics.push_back("component " + std::to_string(j) + ": reference kappa is not an automorphism");
    }
    rep.kappa_reference.push_back(std::move(kr));
  }

  const std::size_t r = g.lambdas.size();
  for (std::size_t a = 0; a < f.group.order(); ++a) {
    const WeylElement& w = f.group[a];
    if (!g.weyl.contains(w.matrix)) throw PreconditionError("gamma_convolve: structure group is not inside W");
    const auto lifts = g.wprime.lifts(w, g.lambdas, opts.lift_cap);
    std::vector<BlockMap> first;
    for (std::size_t t = 0; t < lifts.size(); ++t) {
      const Permutation& eta = lifts[t];
      const Rational sign = opts.convention == Convention::kSigned ? Rational(permutation_sign(eta) * w.sign()) : Rational(1);
      std::vector<BlockMap> blocks;
      for (std::size_t j = 0; j < ncomp; ++j) {
        const auto& [k, b] = f.u[a][j];
        const auto& dst = f.components[k];
        // b_{w'}: x^{m} e (x) s -> x^{eta(m)} e (x) u(s), landing over w(mu_j).
        std::vector<long> moved(r);
        for (std::size_t i = 0; i < r; ++i) moved[static_cast<std::size_t>(eta[i])] = gens[j][i];
        const QVector p = w.act_dual(f.components[j].coset_rep);
        const QVector shift = sub(p, dst.coset_rep);
        Matrix red = Matrix::identity(dst.dim());
        for (std::size_t l = 0; l < r; ++l) {
          const Rational offset = pair(g.lambdas[l], shift);
          const Matrix op = dst.nu_of(g.lambdas[l]).shifted(offset);
          const long target = decompose_exponent(g.lambdas[l], p).n;
          red = exponent_shift(op, g.c, moved[l], target) * red;
          // Translating back from w(mu_j) to mu_k moves the exponent by -<lambda_l, shift>.
          if (target - offset.to_long() != gens[k][l]) {
            rep.equivariance_ok = false;
            rep.diagnostics.push_back("translation does not carry the generator to the generator");
          }
        }
        blocks.push_back(BlockMap{k, red * b * sign});
      }
      ++rep.lifts_checked;
      if (t == 0) {
        first = blocks;
      } else {
        for (std::size_t j = 0; j < ncomp; ++j)
          if (!(blocks[j].block == first[j].block)) {
            if (rep.eta_independent)
              rep.diagnostics.push_back("transported action of w=" + w.matrix.str() + " depends on the lift");
            rep.eta_independent = false;
          }
      }
    }
    for (std::size_t j = 0; j < ncomp; ++j)
      if (first[j].target != f.u[a][j].target || !(first[j].block == f.u[a][j].block)) {
        if (rep.equivariance_ok)
          rep.diagnostics.push_back("transported action of w=" + w.matrix.str() + " differs from the original");
        rep.equivariance_ok = false;
      }
    rep.transported_u.push_back(std::move(first));
  }
  return rep;
}

KeyPropReport check_key_prop(const GammaData& g, const TorusPoint& xi, const GammaOptions& opts) {
  KeyPropReport rep;
  EXiModule e = e_xi_module(g.weyl, xi);
  rep.stabilizer_order = e.structure.group.order();
  rep.fiber_dim = e.module.dim();
  rep.contract = check_structure(e.module, e.structure);
  rep.convolution = gamma_convolve(g, e.module, e.structure, opts);
  rep.passed = rep.contract.ok && rep.convolution.passed();
  return rep;
}

TowerReport check_unipotent_tower(const GammaData& g, const TorusPoint& xi, int n_max, const GammaOptions& opts) {
  if (n_max < 1) throw PreconditionError("check_unipotent_tower: n_max must be positive");
  TowerReport rep;
  rep.passed = true;
  Matrix prev_kappa;
  for (int n = 1; n <= n_max; ++n) {
    UnipotentLevel lvl = unipotent_module(xi, n);
    EquivariantStructure trivial{MatrixGroup(xi.rep.size(), {make_element(IntMatrix::identity(xi.rep.size()))}),
                                 {Matrix::identity(lvl.module.dim())}};
    GammaConvolutionReport conv = gamma_convolve(g, lvl.module, trivial, opts);
    TowerLevel level;
    level.n = n;
    level.dim = lvl.module.dim();
    level.iso_ok = conv.iso_ok && conv.passed();
    level.diagnostics = conv.diagnostics;
    const Matrix& kappa = conv.kappa_reference.front();
    if (n > 1) {
      // proj_{n -> n-1} o kappa_n = kappa_{n-1} o (id (x) proj)
      level.projection_ok = lvl.projection * kappa == prev_kappa * lvl.projection;
      if (!level.projection_ok) level.diagnostics.push_back("kappa does not commute with the tower projection");
    }
    prev_kappa = kappa;
    rep.passed = rep.passed && level.iso_ok && level.projection_ok;
    rep.levels.push_back(std::move(level));
  }
  return rep;
}

EThetaReport check_e_theta(const GammaData& g, const TorusPoint& xi, const GammaOptions& opts) {
  EThetaReport rep;
  EThetaModule e = e_theta_module(g.weyl, xi);
  rep.components = e.module.components.size();
  rep.total_dim = e.module.total_dim();
  rep.contract = check_structure(e.module);
  rep.convolution = gamma_convolve(g, e.module, opts);
  rep.passed = rep.contract.ok && rep.convolution.passed();
  return rep;
}

}  // namespace mgk
