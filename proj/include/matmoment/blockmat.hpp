#ifndef MATMOMENT_BLOCKMAT_HPP
#define MATMOMENT_BLOCKMAT_HPP

#include <vector>

#include "matmoment/types.hpp"

namespace matmoment {

// Moment data h_k. Trigonometric problems store h_0..h_n (negative indices
// are implied by h_{-k} = h_k^*); Hamburger problems store h_0..h_{2n},
// every block Hermitian.
struct MatrixMoments {
  MomentKind kind;
  ProblemDims dims;
  std::vector<CMat> blocks;

  static MatrixMoments trigonometric(ProblemDims d, std::vector<CMat> h);
  static MatrixMoments hamburger(ProblemDims d, std::vector<CMat> h);

  // h(k): trig accepts k in [-n, n], Hamburger k in [0, 2n].
  CMat h(int k) const;

  void validate() const;
};

// Hermitian positive definite Gram matrix with its cached inverse.
// smallest_pivot is the least diagonal entry of the pivoted LDL^*
// factorization, kept around as a conditioning witness.
struct GramPair {
  ProblemDims dims;
  CMat G;
  CMat Gamma;
  double smallest_pivot = 0.0;

  CMat g(int i, int j) const { return G.block(i * dims.p, j * dims.p, dims.p, dims.p); }
  CMat gamma(int i, int j) const {
    return Gamma.block(i * dims.p, j * dims.p, dims.p, dims.p);
  }
};

// Assembles the block Toeplitz (g_ij = h_{i-j}) or block Hankel
// (g_ij = h_{i+j}) Gram matrix and inverts it. Throws NotPositiveDefinite
// when the pivoted factorization dips below 1e-12 * ||G||.
GramPair build_gram(const MatrixMoments& moments);

// Same factorization/inversion path for an arbitrary Hermitian matrix
// (used by the structure-agnostic identity checks and the fuzz suites).
GramPair gram_from_matrix(ProblemDims dims, const CMat& G);

// Block upshift A (identity blocks on the first block superdiagonal) and
// the block injections e_0..e_n. A^{n+1} = 0, e0 e0^* + A^*A = I,
// A A^* + e_n e_n^* = I.
struct ShiftStructure {
  ProblemDims dims;
  CMat A;

  explicit ShiftStructure(ProblemDims d);
  CMat e(int j) const;
};

// Row of monomial blocks [I, lambda I, ..., lambda^n I]; equals
// e0^*(I - lambda A)^{-1} but computed directly from powers.
CMat monomial_row(ProblemDims dims, Cplx lambda);

// lambda * monomial_row(lambda).
CMat shifted_monomial_row(ProblemDims dims, Cplx lambda);

// Exact layout comparisons, used as construction-side oracles.
bool is_block_toeplitz(ProblemDims dims, const CMat& G, double tol);
bool is_block_hankel(ProblemDims dims, const CMat& G, double tol);

// Finite structure criteria: the Toeplitz test is || [G - A^*GA]_{[1,n]} ||
// and the Hankel test || [GA - A^*G]_{[1,n]} ||, both relative to ||G||.
double toeplitz_structure_residual(ProblemDims dims, const CMat& G);
double hankel_structure_residual(ProblemDims dims, const CMat& G);

// Hermitian inverse square root with eigenvalue floor 1e-14 * trace.
CMat hermitian_inv_sqrt(const CMat& M);
CMat hermitian_sqrt(const CMat& M);

}  // namespace matmoment

#endif
