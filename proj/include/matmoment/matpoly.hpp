#ifndef MATMOMENT_MATPOLY_HPP
#define MATMOMENT_MATPOLY_HPP

#include <vector>

#include "matmoment/types.hpp"

namespace matmoment {

// Polynomial with p x p complex matrix coefficients. Trailing blocks whose
// Frobenius norm is below 1e-13 * (max coefficient norm) are trimmed.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(int p, std::vector<CMat> coeffs);

  static MatrixPolynomial zero(int p) { return MatrixPolynomial(p, {}); }
  static MatrixPolynomial constant(const CMat& c);

  int p() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<CMat>& coeffs() const { return coeffs_; }
  // Coefficient of lambda^k; zero block beyond the degree.
  CMat coeff(int k) const;
  const CMat& leading() const { return coeffs_.back(); }

  CMat eval(Cplx lambda) const;  // Horner

  MatrixPolynomial operator+(const MatrixPolynomial& rhs) const;
  MatrixPolynomial operator-(const MatrixPolynomial& rhs) const;
  MatrixPolynomial scaled(Cplx factor) const;
  // Multiplication by a scalar polynomial sum_k s[k] lambda^k.
  MatrixPolynomial times_scalar_poly(const std::vector<Cplx>& s) const;
  MatrixPolynomial shifted(int k) const;  // multiply by lambda^k
  // Blockwise adjoint of the coefficients: sum_k c_k^* lambda^k.
  MatrixPolynomial conjugated() const;

 private:
  int p_ = 0;
  std::vector<CMat> coeffs_;  // c_0 .. c_d, at least one block
  void trim();
};

// f^# in the two geometries. On the half-plane f^#(lambda) = f(conj l)^* is
// again a polynomial (the conjugated coefficients). On the disc
// f^#(lambda) = f(1/conj l)^* is a Laurent expression with its pole at 0;
// it is exposed as an evaluator together with the reversed polynomial
// lambda^d f^#(lambda).
struct SharpForm {
  GeometryTag tag;
  MatrixPolynomial conj;  // sum_k c_k^* lambda^k

  CMat eval(Cplx lambda) const;
  // For the half-plane this is conj itself (degree-d form); for the disc it
  // is the coefficient-reversed polynomial sum_k c_{d-k}^* lambda^k.
  MatrixPolynomial reversed() const;
};

SharpForm sharp(const MatrixPolynomial& f, GeometryTag tag);

// Elementary Blaschke factor, modulus < 1 on the region and 1 on its
// boundary. Disc: (lambda - alpha)/(1 - lambda conj alpha); half-plane:
// (lambda - alpha)/(lambda - conj alpha).
struct BlaschkeFactor {
  Cplx alpha;
  GeometryTag tag;
  Cplx operator()(Cplx lambda) const;
};

BlaschkeFactor blaschke(Cplx alpha, GeometryTag tag);

// Kernel denominator rho_omega(lambda): 1 - lambda conj(omega) on the disc,
// -2 pi i (lambda - conj(omega)) on the half-plane.
Cplx rho(Cplx omega, Cplx lambda, GeometryTag tag);

}  // namespace matmoment

#endif
