#ifndef MATMOMENT_DEBRANGES_HPP
#define MATMOMENT_DEBRANGES_HPP

#include <optional>
#include <vector>

#include "matmoment/blockmat.hpp"
#include "matmoment/matpoly.hpp"

namespace matmoment {

// Everything derived from one Gram matrix: the shift structure, the
// normalized inverse-Gram columns u_j = Gamma e_j (gamma_jj)^{-1/2}, the
// rank-(m-p) annihilators N_0 = Gamma - u_0 u_0^* and
// N_dot = Gamma - u_n u_n^*, and the point-indexed family z_alpha, N_alpha.
class SpaceData {
 public:
  SpaceData(MomentKind kind, GramPair gram);

  static SpaceData from_moments(const MatrixMoments& moments);

  MomentKind kind() const { return kind_; }
  GeometryTag tag() const { return geometry_of(kind_); }
  ProblemDims dims() const { return gram_.dims; }
  const CMat& G() const { return gram_.G; }
  const CMat& Gamma() const { return gram_.Gamma; }
  const GramPair& gram() const { return gram_; }
  const CMat& A() const { return shift_.A; }
  CMat e(int j) const { return shift_.e(j); }
  const CMat& u(int j) const { return u_[j]; }
  const CMat& N0() const { return N0_; }
  const CMat& Ndot() const { return Ndot_; }

  // z_alpha = Gamma F(alpha)^* (F(alpha) Gamma F(alpha)^*)^{-1/2}, with the
  // Hermitian square root. Well defined at every point.
  CMat z(Cplx alpha) const;
  // N_alpha = Gamma - z_alpha z_alpha^*; annihilates evaluation at alpha.
  CMat annihilator(Cplx alpha) const;
  // Reproducing kernel K_omega(lambda) = F(lambda) Gamma F(omega)^*.
  CMat kernel(Cplx omega, Cplx lambda) const;

  // Last-two-column data for the Hankel constructions:
  // v_n = e_{n-1} - e_n gamma_nn^{-1} gamma_{n,n-1}, w_n = Gamma v_n gamma_nn^{-1/2}.
  CMat w_last() const;

  // Lower block triangular Toeplitz matrix built from h_0, 2h_1, ..., 2h_n;
  // its adjoint equals 2G - itself. Only defined for Toeplitz data.
  CMat lower_moment_triangle() const;

  bool looks_toeplitz(double tol = 1e-10) const;
  bool looks_hankel(double tol = 1e-10) const;

 private:
  MomentKind kind_;
  GramPair gram_;
  ShiftStructure shift_;
  std::vector<CMat> u_;
  CMat N0_, Ndot_;
};

enum class PairConstruction {
  ToeplitzTwoColumn,
  ToeplitzAlpha,
  HankelAlpha,
  HankelTwoColumn,
};

inline const char* to_string(PairConstruction c) {
  switch (c) {
    case PairConstruction::ToeplitzTwoColumn: return "toeplitz-two-column";
    case PairConstruction::ToeplitzAlpha: return "toeplitz-alpha";
    case PairConstruction::HankelAlpha: return "hankel-alpha";
    case PairConstruction::HankelTwoColumn: return "hankel-two-column";
  }
  return "?";
}

// A pair (E_-, E_+) with det E_+ nonzero on the closed region and
// contractive ratio E_+^{-1} E_-.
struct DeBrangesPair {
  MatrixPolynomial minus;
  MatrixPolynomial plus;
  GeometryTag tag;
  PairConstruction construction;
  Cplx alpha{0.0, 0.0};  // parameter of the alpha-based constructions

  // Kernel reproduced by the pair:
  // (E_+(l)E_+(w)^* - E_-(l)E_-(w)^*) / rho_w(l).
  CMat kernel(Cplx omega, Cplx lambda) const;
  // Largest deviation of ||E_+(w)^{-1} E_-(w)||_2 from contractivity and of
  // det E_+ from invertibility over sampled closed-region points.
  double validate(int samples = 24) const;
};

// E_+ = F u_0 (degree n), E_- = lambda F u_n (degree n+1, no constant term).
DeBrangesPair toeplitz_pair(const SpaceData& data);

// E_+ = (1 - l conj a)/sqrt(1-|a|^2) F z_a,
// E_- = (l - a)/sqrt(1-|a|^2) F z_{1/conj a}, for 0 < |a| < 1.
DeBrangesPair toeplitz_pair_alpha(const SpaceData& data, Cplx alpha = Cplx(0.5, 0.0));

// E_+ = rho_a(l)/sqrt(rho_a(a)) F z_a, E_- = rho_{conj a}(l)/sqrt(rho_a(a))
// F z_{conj a}, for Im a > 0.
DeBrangesPair hankel_pair(const SpaceData& data, Cplx alpha = kI);

// E_+ = sqrt(pi) F ((l+i) u_n - w_n), E_- = sqrt(pi) F ((l-i) u_n - w_n).
DeBrangesPair hankel_two_column_pair(const SpaceData& data);

// Boundary density (E_+(l) E_+(l)^*)^{-1}, Hermitian positive definite.
CMat density(const DeBrangesPair& pair, Cplx boundary_point);

// Second-kind companions: E_+o = Phi E_+ and E_-o = Phi E_- - 2 (E_-^#)^{-1}
// at interior points. Defined for the two-column Toeplitz pair (through the
// moment triangle) and the alpha-based Hankel pair (through the resolvent
// columns); other constructions are rejected.
struct SecondKindPair {
  MatrixPolynomial minus;
  MatrixPolynomial plus;
};

SecondKindPair second_kind(const SpaceData& data, const DeBrangesPair& pair);

// Carathedory transform of the pair's boundary density. Trigonometric data
// uses the closed resolvent form 2 e0^* G (I - w A N0 G)^{-1} e0 - h0;
// Hamburger data uses E_+o(w) E_+(w)^{-1}.
CMat phi_transform(const SpaceData& data, const DeBrangesPair& pair, Cplx omega);

// Reverse polynomial built from the flipped Gram matrix Z G Z; satisfies
// reversed_plus(l) = l^{n+1} E_-(1/l) for the two-column Toeplitz pair.
MatrixPolynomial reversed_plus(const SpaceData& data);

}  // namespace matmoment

#endif
