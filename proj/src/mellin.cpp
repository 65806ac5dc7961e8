#include "mgk/mellin.hpp"

#include <algorithm>
#include <random>

#include "mgk/error.hpp"
#include "mgk/polynomial.hpp"

namespace mgk {

namespace {

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, 0);
  v[i] = 1;
  return v;
}

void require_valid(const MonodromicModule& m, const char* who) {
  auto v = module_violations(m);
  if (!v.empty()) throw ComputationError(std::string(who) + ": constructed module is invalid: " + v.front());
}

// Operators D_i = N_M(v_i) (x) 1 - 1 (x) N_N(v_i), after normalizing N to
// M's representative when the cosets agree.
std::vector<Matrix> difference_operators(const MonodromicModule& m, const MonodromicModule& n) {
  if (m.rank() != n.rank()) throw PreconditionError("modules on tori of different rank");
  const MonodromicModule nn = m.coset() == n.coset() ? n.renormalized(m.coset_rep) : n;
  std::vector<Matrix> d;
  const Matrix im = Matrix::identity(m.dim()), in = Matrix::identity(n.dim());
  for (std::size_t i = 0; i < m.rank(); ++i) d.push_back(kron(m.nu[i], in) - kron(im, nn.nu[i]));
  return d;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == p) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Polynomial poly_det(const std::vector<std::vector<Polynomial>>& a, std::size_t nvars) {
  const std::size_t n = a.size();
  if (n == 0) return Polynomial::constant(nvars, 1);
  if (n == 1) return a[0][0];
  Polynomial det(nvars);
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial t = a[0][c] * poly_det(minor, nvars);
    if (c % 2) det -= t;
    else det += t;
  }
  return det;
}

Matrix combination(const std::vector<Matrix>& basis, const std::vector<Rational>& coeffs) {
  Matrix x(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coeffs[i].is_zero()) x += basis[i] * coeffs[i];
  return x;
}

bool invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

}  // namespace

Matrix MonodromicModule::nu_of(const IntVector& h) const {
  if (h.size() != rank()) throw PreconditionError("nu_of: covector of wrong rank");
  Matrix out(fiber_dim, fiber_dim);
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0) out += nu[i] * Rational(h[i]);
  return out;
}

MonodromicModule MonodromicModule::renormalized(const QVector& rep) const {
  QVector shift = sub(rep, coset_rep);
  if (!is_integral(shift)) throw PreconditionError("renormalized: representative not in the same coset");
  MonodromicModule out = *this;
  out.coset_rep = rep;
  for (std::size_t i = 0; i < rank(); ++i) out.nu[i] = nu[i].shifted(shift[i]);
  return out;
}

std::vector<std::string> module_violations(const MonodromicModule& m) {
  std::vector<std::string> out;
  if (m.nu.size() != m.rank()) {
    out.push_back("operator count differs from rank");
    return out;
  }
  for (std::size_t i = 0; i < m.rank(); ++i) {
    if (m.nu[i].rows() != m.dim() || m.nu[i].cols() != m.dim())
      out.push_back("N_" + std::to_string(i + 1) + " has wrong shape");
  }
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    if (!is_nilpotent(m.nu[i].shifted(-m.coset_rep[i])))
      out.push_back("N_" + std::to_string(i + 1) + " - mu0_" + std::to_string(i + 1) + " is not nilpotent");
    for (std::size_t j = i + 1; j < m.rank(); ++j)
      if (!commute(m.nu[i], m.nu[j]))
        out.push_back("N_" + std::to_string(i + 1) + " and N_" + std::to_string(j + 1) + " do not commute");
  }
  return out;
}

std::size_t MultiCosetModule::total_dim() const {
  std::size_t d = 0;
  for (const auto& c : components) d += c.dim();
  return d;
}

MultiCosetModule MultiCosetModule::from_single(const MonodromicModule& m, const EquivariantStructure& s) {
  MultiCosetModule out;
  out.components = {m};
  out.group = s.group;
  for (const auto& u : s.u) out.u.push_back({BlockMap{0, u}});
  return out;
}

ContractReport check_structure(const MonodromicModule& m, const EquivariantStructure& s) {
  return check_structure(MultiCosetModule::from_single(m, s));
}

ContractReport check_structure(const MultiCosetModule& mm) {
  ContractReport rep;
  const auto& g = mm.group;
  if (mm.u.size() != g.order()) {
    rep.fail("structure has " + std::to_string(mm.u.size()) + " element maps for a group of order " +
             std::to_string(g.order()));
    return rep;
  }
  const std::size_t ncomp = mm.components.size();
  for (std::size_t a = 0; a < g.order(); ++a) {
    const auto& w = g[a];
    if (mm.u[a].size() != ncomp) {
      rep.fail("element " + w.matrix.str() + " has the wrong number of blocks");
      continue;
    }
    for (std::size_t j = 0; j < ncomp; ++j) {
      const auto& [k, b] = mm.u[a][j];
      const auto& src = mm.components[j];
      const auto& dst = mm.components.at(k);
      const std::string tag = "w=" + w.matrix.str() + " block " + std::to_string(j) + "->" + std::to_string(k);
      if (b.rows() != dst.dim() || b.cols() != src.dim()) {
        rep.fail(tag + ": block has wrong shape");
        continue;
      }
      if (!invertible(b)) rep.fail(tag + ": block is singular");
      QVector shift = sub(w.act_dual(src.coset_rep), dst.coset_rep);
      if (!is_integral(shift)) {
        rep.fail(tag + ": w(mu_j) - mu_k is not integral");
        continue;
      }
      for (std::size_t i = 0; i < src.rank(); ++i) {
        IntVector h = unit(src.rank(), i);
        IntVector wh = w.act(h);
        Matrix lhs = b * src.nu_of(h);
        Matrix rhs = dst.nu_of(wh).shifted(pair(wh, shift)) * b;
        ++rep.equations_checked;
        if (!(lhs == rhs)) rep.fail(tag + ": intertwining fails for h=v_" + std::to_string(i + 1));
      }
    }
  }
  const std::size_t e = g.identity_index();
  for (std::size_t j = 0; j < ncomp && mm.u[e].size() == ncomp; ++j) {
    ++rep.equations_checked;
    if (mm.u[e][j].target != j || !mm.u[e][j].block.is_identity()) rep.fail("u(e) is not the identity");
  }
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) {
      const std::size_t p = g.product(a, b);
      for (std::size_t j = 0; j < ncomp; ++j) {
        const auto& inner = mm.u[b][j];
        const auto& outer = mm.u[a][inner.target];
        const auto& whole = mm.u[p][j];
        ++rep.equations_checked;
        if (whole.target != outer.target || !(whole.block == outer.block * inner.block))
          rep.fail("cocycle fails for w1=" + g[a].matrix.str() + ", w2=" + g[b].matrix.str());
      }
    }
  return rep;
}

MonodromicModule kummer_module(const TorusPoint& xi) {
  MonodromicModule m;
  m.coset_rep = xi.rep;
  m.fiber_dim = 1;
  for (const auto& x : xi.rep) m.nu.push_back(Matrix{{x}});
  return m;
}

UnipotentLevel unipotent_module(const TorusPoint& xi, int n) {
  if (n < 1) throw PreconditionError("unipotent_module: n must be positive");
  const std::size_t r = xi.rep.size();
  UnipotentLevel lvl{{}, truncation_algebra(r, n), {}};
  lvl.module.coset_rep = xi.rep;
  lvl.module.fiber_dim = lvl.algebra.dim;
  for (std::size_t i = 0; i < r; ++i) lvl.module.nu.push_back(lvl.algebra.mult[i].shifted(xi.rep[i]));
  lvl.projection = n > 1 ? lvl.algebra.projection_to(n - 1) : Matrix(0, lvl.algebra.dim);
  require_valid(lvl.module, "unipotent_module");
  return lvl;
}

EXiModule e_xi_module(const MatrixGroup& w, const TorusPoint& xi) {
  MatrixGroup stab = stabilizer(w, xi);
  EXiModule out{{}, {}, coinvariant_algebra(stab)};
  const auto& alg = out.algebra;
  out.module.coset_rep = xi.rep;
  out.module.fiber_dim = alg.dim;
  for (std::size_t i = 0; i < w.rank(); ++i) out.module.nu.push_back(alg.mult[i].shifted(xi.rep[i]));
  out.structure.group = stab;
  out.structure.u = alg.action;
  require_valid(out.module, "e_xi_module");
  auto contract = check_structure(out.module, out.structure);
  if (!contract.ok) throw ComputationError("e_xi_module: equivariant structure violates its contract: " +
                                           contract.failures.front());
  return out;
}

EThetaModule e_theta_module(const MatrixGroup& w, const TorusPoint& xi) {
  EXiModule base = e_xi_module(w, xi);
  const MatrixGroup& stab = base.structure.group;
  EThetaModule out;
  out.stabilizer_order = stab.order();
  out.fiber_dim = base.module.dim();

  // Coset representatives of W / W_xi in enumeration order.
  std::vector<TorusPoint> seen;
  for (std::size_t a = 0; a < w.order(); ++a) {
    TorusPoint p{w[a].act_dual(xi.rep)};
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
    seen.push_back(p);
    out.coset_reps.push_back(a);
  }
  const std::size_t r = w.rank();
  for (std::size_t a : out.coset_reps) {
    const IntMatrix ginv = w[a].matrix.inverse();
    MonodromicModule c;
    c.coset_rep = w[a].act_dual(xi.rep);
    c.fiber_dim = base.module.dim();
    for (std::size_t i = 0; i < r; ++i) {
      IntVector col(r);
      for (std::size_t l = 0; l < r; ++l) col[l] = ginv(l, i);
      c.nu.push_back(base.module.nu_of(col));
    }
    require_valid(c, "e_theta_module");
    out.module.components.push_back(std::move(c));
  }
  out.module.group = w;
  for (std::size_t a = 0; a < w.order(); ++a) {
    std::vector<BlockMap> blocks;
    for (std::size_t j = 0; j < out.coset_reps.size(); ++j) {
      const IntMatrix wg = w[a].matrix * w[out.coset_reps[j]].matrix;
      bool placed = false;
      for (std::size_t k = 0; k < out.coset_reps.size() && !placed; ++k) {
        IntMatrix s = w[out.coset_reps[k]].matrix.inverse() * wg;
        if (auto idx = stab.index_of(s)) {
          blocks.push_back(BlockMap{k, base.structure.u[*idx]});
          placed = true;
        }
      }
      if (!placed) throw ComputationError("e_theta_module: coset representative lookup failed");
    }
    out.module.u.push_back(std::move(blocks));
  }
  auto contract = check_structure(out.module);
  if (!contract.ok) throw ComputationError("e_theta_module: blockwise contract fails: " + contract.failures.front());
  return out;
}

MonodromicModule direct_sum(const MonodromicModule& a, const MonodromicModule& b) {
  if (!(a.coset() == b.coset())) throw PreconditionError("direct_sum: modules on different cosets");
  MonodromicModule bb = b.renormalized(a.coset_rep);
  MonodromicModule out;
  out.coset_rep = a.coset_rep;
  out.fiber_dim = a.dim() + b.dim();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    Matrix m(out.fiber_dim, out.fiber_dim);
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < a.dim(); ++c) m(r, c) = a.nu[i](r, c);
    for (std::size_t r = 0; r < b.dim(); ++r)
      for (std::size_t c = 0; c < b.dim(); ++c) m(a.dim() + r, a.dim() + c) = bb.nu[i](r, c);
    out.nu.push_back(std::move(m));
  }
  return out;
}

MonodromicModule tensor(const MonodromicModule& m, const MonodromicModule& n) {
  MonodromicModule out;
  out.coset_rep = m.coset_rep;
  out.nu.assign(m.rank(), Matrix(0, 0));
  if (!(m.coset() == n.coset()) || m.dim() == 0 || n.dim() == 0) return out;

  const MonodromicModule nn = n.renormalized(m.coset_rep);
  const std::size_t d = m.dim() * n.dim();
  auto ops = difference_operators(m, nn);
  // Rows spanning the relation subspace, reduced to echelon form.
  Matrix rel = hstack(ops).transpose();
  auto pivots = rref(rel);
  std::vector<bool> is_pivot(d, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < d; ++j)
    if (!is_pivot[j]) keep.push_back(j);

  // Projection onto the quotient: reduce by the echelon rows, read the free coordinates.
  auto project = [&](const Vector& x) {
    Vector y = x;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Rational f = y[pivots[r]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < d; ++c)
        if (!rel(r, c).is_zero()) y[c] -= f * rel(r, c);
    }
    Vector q(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) q[i] = y[keep[i]];
    return q;
  };

  out.fiber_dim = keep.size();
  const Matrix in = Matrix::identity(n.dim());
  out.nu.clear();
  for (std::size_t i = 0; i < m.rank(); ++i) {
    Matrix act = kron(m.nu[i], in);
    std::vector<Vector> cols;
    for (std::size_t j : keep) cols.push_back(project(act.column(j)));
    out.nu.push_back(Matrix::from_columns(cols, keep.size()));
  }
  return out;
}

std::vector<std::size_t> tor(const MonodromicModule& m, const MonodromicModule& n) {
  const std::size_t r = m.rank();
  std::vector<std::size_t> dims(r + 1, 0);
  if (m.dim() == 0 || n.dim() == 0) return dims;
  auto ops = difference_operators(m, n);
  const std::size_t d = m.dim() * n.dim();

  std::vector<std::vector<std::vector<std::size_t>>> sets(r + 1);
  for (std::size_t p = 0; p <= r; ++p) sets[p] = subsets(r, p);
  // ranks[p] = rank of the differential K_p -> K_{p-1}
  std::vector<std::size_t> ranks(r + 2, 0);
  for (std::size_t p = 1; p <= r; ++p) {
    const auto& src = sets[p];
    const auto& dst = sets[p - 1];
    Matrix dp(dst.size() * d, src.size() * d);
    for (std::size_t s = 0; s < src.size(); ++s) {
      for (std::size_t t = 0; t < p; ++t) {
        std::vector<std::size_t> face = src[s];
        const std::size_t gen = face[t];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(t));
        const std::size_t row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), face) - dst.begin());
        const Rational sign = t % 2 ? -1 : 1;
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b)
            if (!ops[gen](a, b).is_zero()) dp(row * d + a, s * d + b) += sign * ops[gen](a, b);
      }
    }
    ranks[p] = rank(dp);
  }
  for (std::size_t p = 0; p <= r; ++p) dims[p] = sets[p].size() * d - ranks[p] - ranks[p + 1];
  return dims;
}

MorphismReport verify_morphism(const Matrix& f, const MonodromicModule& m, const MonodromicModule& n,
                               const EquivariantStructure* sm, const EquivariantStructure* sn) {
  MorphismReport rep;
  auto fail = [&](std::string s) {
    rep.passed = false;
    rep.failures.push_back(std::move(s));
  };
  if (f.rows() != n.dim() || f.cols() != m.dim()) {
    fail("shape " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) + " does not match " +
         std::to_string(n.dim()) + "x" + std::to_string(m.dim()));
    return rep;
  }
  if (!(m.coset() == n.coset())) {
    if (!f.is_zero()) fail("modules live on different cosets, only the zero map is a morphism");
    return rep;
  }
  const MonodromicModule nn = n.renormalized(m.coset_rep);
  for (std::size_t i = 0; i < m.rank(); ++i)
    if (!(f * m.nu[i] == nn.nu[i] * f))
      fail("f*N_M(v_" + std::to_string(i + 1) + ") != N_N(v_" + std::to_string(i + 1) + ")*f");
  if (sm && sn) {
    for (std::size_t a = 0; a < sm->group.order(); ++a) {
      auto b = sn->group.index_of(sm->group[a].matrix);
      if (!b) {
        fail("group element " + sm->group[a].matrix.str() + " missing from the target structure");
        continue;
      }
      if (!(f * sm->u[a] == sn->u[*b] * f)) fail("f*u_M(w) != u_N(w)*f for w=" + sm->group[a].matrix.str());
    }
  }
  return rep;
}

std::string to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::kFound: return "found";
    case IsoStatus::kNoneCertified: return "none (certified)";
    case IsoStatus::kNoCertificate: return "no certificate";
  }
  return "?";
}

std::vector<Matrix> intertwiners(const MonodromicModule& m, const MonodromicModule& n) {
  if (!(m.coset() == n.coset())) return {};
  const MonodromicModule nn = n.renormalized(m.coset_rep);
  const std::size_t dm = m.dim(), dn = n.dim();
  if (dm == 0 || dn == 0) return {};
  // vec(X A) = (A^T (x) I) vec X,  vec(B X) = (I (x) B) vec X, column-major vec.
  std::vector<Matrix> eqs;
  for (std::size_t i = 0; i < m.rank(); ++i)
    eqs.push_back(kron(m.nu[i].transpose(), Matrix::identity(dn)) - kron(Matrix::identity(dm), nn.nu[i]));
  std::vector<Matrix> out;
  for (const auto& v : kernel(vstack(eqs))) {
    Matrix x(dn, dm);
    for (std::size_t c = 0; c < dm; ++c)
      for (std::size_t r = 0; r < dn; ++r) x(r, c) = v[c * dn + r];
    out.push_back(std::move(x));
  }
  return out;
}

IsoResult iso_search(const MonodromicModule& m, const MonodromicModule& n) {
  IsoResult res;
  if (m.dim() != n.dim() || !(m.coset() == n.coset())) return res;
  auto basis = intertwiners(m, n);
  res.intertwiner_dim = basis.size();
  if (basis.empty()) return res;
  const std::size_t k = basis.size();

  auto accept = [&](Matrix x) {
    if (!invertible(x)) return false;
    res.status = IsoStatus::kFound;
    res.iso = std::move(x);
    return true;
  };
  for (const auto& b : basis)
    if (accept(b)) return res;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (accept(basis[i] + basis[j])) return res;
      for (std::size_t l = j + 1; l < k; ++l)
        if (accept(basis[i] + basis[j] + basis[l])) return res;
    }
  std::mt19937 rng(20240517u);
  std::uniform_int_distribution<long> coef(-5, 5);
  for (int t = 0; t < 32; ++t) {
    std::vector<Rational> c(k);
    for (auto& x : c) x = coef(rng);
    if (accept(combination(basis, c))) return res;
  }

  res.status = IsoStatus::kNoCertificate;
  // Symbolic determinant of the generic intertwiner sum_i t_i X_i.
  const std::size_t d = m.dim();
  if (d <= 5) {
    std::vector<std::vector<Polynomial>> a(d, std::vector<Polynomial>(d, Polynomial(k)));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        std::vector<Rational> lin(k);
        for (std::size_t i = 0; i < k; ++i) lin[i] = basis[i](r, c);
        a[r][c] = Polynomial::linear_form(lin);
      }
    Polynomial det = poly_det(a, k);
    res.singular_proven = det.is_zero();
    if (!res.singular_proven) {
      // A nonzero determinant polynomial of degree d has a non-root among
      // points with coordinates in a range larger than d.
      std::uniform_int_distribution<long> wide(-static_cast<long>(4 * d + 4), static_cast<long>(4 * d + 4));
      for (int t = 0; t < 256; ++t) {
        std::vector<Rational> c(k);
        for (auto& x : c) x = wide(rng);
        if (accept(combination(basis, c))) return res;
      }
    }
  }
  return res;
}

}  // namespace mgk
