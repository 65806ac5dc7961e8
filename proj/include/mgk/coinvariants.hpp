#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "mgk/groebner.hpp"
#include "mgk/matrix.hpp"
#include "mgk/polynomial.hpp"
#include "mgk/rootdata.hpp"

namespace mgk {

// True iff the group is generated by its elements w with rank(w - 1) = 1.
bool reflection_generated(const MatrixGroup& group);

// The action of a group element on S = Q[v_1..v_n]: v_j -> sum_i w(i,j) v_i.
Polynomial act(const WeylElement& w, const Polynomial& f);

// Q-basis of the homogeneous invariants of degree d (Reynolds averaging of
// the degree-d monomials followed by row reduction).
std::vector<Polynomial> invariants_of_degree(const MatrixGroup& group, int d);

// Invariants of degrees 1..degree_bound; degree_bound defaults to |group|.
std::vector<Polynomial> invariant_generators(const MatrixGroup& group, int degree_bound = 0);

// S / S.S_+^G with its standard-monomial basis.
struct CoinvariantAlgebra {
  MatrixGroup group;
  std::vector<Polynomial> invariant_generators;
  GroebnerBasis gb;
  std::vector<Monomial> basis;
  std::size_t dim = 0;
  std::vector<Matrix> action;  // parallel to group.elements()
  std::vector<Matrix> mult;    // multiplication by v_i
  bool reflection_generated = false;
  int degree_bound = 0;        // largest degree of invariants used

  std::size_t rank() const { return group.rank(); }
  // Coordinates of the class of f in the basis.
  Vector coords(const Polynomial& f) const;
  // Multiplication by the linear form sum_i h_i v_i.
  Matrix mult_by(const IntVector& h) const;
};

// Throws ComputationError("coinvariant construction failed") if the quotient
// stays infinite at the Noether bound.
CoinvariantAlgebra coinvariant_algebra(const MatrixGroup& group);

// S_n = S / S_+^n.
struct TruncationAlgebra {
  std::size_t rank = 0;
  int n = 0;
  std::vector<Monomial> basis;  // degree < n, grevlex ascending
  std::size_t dim = 0;
  std::vector<Matrix> mult;

  // Surjection S_n -> S_m for m <= n.
  Matrix projection_to(int m) const;
  Matrix mult_by(const IntVector& h) const;
};

TruncationAlgebra truncation_algebra(std::size_t rank, int n);

}  // namespace mgk
