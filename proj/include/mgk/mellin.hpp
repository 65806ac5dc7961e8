#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mgk/coinvariants.hpp"
#include "mgk/matrix.hpp"
#include "mgk/rootdata.hpp"

namespace mgk {

// Mellin-side model of a monodromic module on T supported on one coset
// mu0 + Z^n: a single fiber V with commuting operators N_i (the action of
// the coordinate vector fields v_i), each with sole eigenvalue mu0_i. The
// fiber at mu0 + lambda is (V, N + lambda); translations are the identity
// on V.
struct MonodromicModule {
  QVector coset_rep;
  std::vector<Matrix> nu;
  std::size_t fiber_dim = 0;

  std::size_t rank() const { return coset_rep.size(); }
  std::size_t dim() const { return fiber_dim; }
  TorusPoint coset() const { return TorusPoint{coset_rep}; }
  // N(h) = sum_i h_i N_i for a cocharacter h.
  Matrix nu_of(const IntVector& h) const;
  // Same module presented at another representative of the same coset.
  MonodromicModule renormalized(const QVector& rep) const;
};

// Commutation and eigenvalue violations; empty when the module is valid.
std::vector<std::string> module_violations(const MonodromicModule& m);

// Action of a group W' contained in the stabilizer of the coset:
// u(w) N(h) = (N(w h) + <w h, w(mu0) - mu0>) u(w), u(w1) u(w2) = u(w1 w2).
struct EquivariantStructure {
  MatrixGroup group;
  std::vector<Matrix> u;  // parallel to group.elements()
};

struct ContractReport {
  bool ok = true;
  std::size_t equations_checked = 0;
  std::vector<std::string> failures;

  void fail(std::string what) {
    ok = false;
    if (failures.size() < 32) failures.push_back(std::move(what));
  }
};

// Blockwise equivariant module over several cosets (the W-orbit of a coset).
struct BlockMap {
  std::size_t target = 0;
  Matrix block;
};

struct MultiCosetModule {
  std::vector<MonodromicModule> components;
  MatrixGroup group;
  std::vector<std::vector<BlockMap>> u;  // u[element][source component]

  std::size_t total_dim() const;
  static MultiCosetModule from_single(const MonodromicModule& m, const EquivariantStructure& s);
};

// Intertwining contract, cocycle and invertibility over every group element.
ContractReport check_structure(const MonodromicModule& m, const EquivariantStructure& s);
ContractReport check_structure(const MultiCosetModule& m);

MonodromicModule kummer_module(const TorusPoint& xi);

struct UnipotentLevel {
  MonodromicModule module;
  TruncationAlgebra algebra;
  Matrix projection;  // onto level n-1; 0x dim when n == 1
};

UnipotentLevel unipotent_module(const TorusPoint& xi, int n);

struct EXiModule {
  MonodromicModule module;
  EquivariantStructure structure;
  CoinvariantAlgebra algebra;
};

// Fiber S_xi = S / S.S_+^{W_xi}, N(h) = mult(h) + <h, mu0>, u(w) = action of w.
// Throws ComputationError if the constructed structure violates its contract.
EXiModule e_xi_module(const MatrixGroup& w, const TorusPoint& xi);

struct EThetaModule {
  MultiCosetModule module;
  std::vector<std::size_t> coset_reps;  // indices into W, one per component
  std::size_t stabilizer_order = 0;
  std::size_t fiber_dim = 0;
};

EThetaModule e_theta_module(const MatrixGroup& w, const TorusPoint& xi);

MonodromicModule direct_sum(const MonodromicModule& a, const MonodromicModule& b);

// Degree-0 part of the derived tensor over Q[v]; zero module on distinct cosets.
MonodromicModule tensor(const MonodromicModule& m, const MonodromicModule& n);

// Homologically graded dimensions Tor_0..Tor_rank via the Koszul complex of
// D_i = N_M(v_i) (x) 1 - 1 (x) N_N(v_i).
std::vector<std::size_t> tor(const MonodromicModule& m, const MonodromicModule& n);

struct MorphismReport {
  bool passed = true;
  std::vector<std::string> failures;
};

MorphismReport verify_morphism(const Matrix& f, const MonodromicModule& m, const MonodromicModule& n,
                               const EquivariantStructure* sm = nullptr,
                               const EquivariantStructure* sn = nullptr);

enum class IsoStatus { kFound, kNoneCertified, kNoCertificate };
std::string to_string(IsoStatus s);

struct IsoResult {
  IsoStatus status = IsoStatus::kNoneCertified;
  std::optional<Matrix> iso;
  std::size_t intertwiner_dim = 0;
  bool singular_proven = false;  // symbolic determinant vanishes identically
};

// Basis of Hom(M, N) (linear maps commuting with all N_i after normalization).
std::vector<Matrix> intertwiners(const MonodromicModule& m, const MonodromicModule& n);
IsoResult iso_search(const MonodromicModule& m, const MonodromicModule& n);

}  // namespace mgk
