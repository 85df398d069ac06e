#include "matmoment/matpoly.hpp"

namespace matmoment {

MatrixPolynomial::MatrixPolynomial(int p, std::vector<CMat> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
  for (const CMat& c : coeffs_)
    if (c.rows() != p_ || c.cols() != p_)
      throw ShapeMismatch("polynomial coefficient has wrong shape");
  if (coeffs_.empty()) coeffs_.push_back(CMat::Zero(p_, p_));
  trim();
}

MatrixPolynomial MatrixPolynomial::constant(const CMat& c) {
  return MatrixPolynomial(static_cast<int>(c.rows()), {c});
}

void MatrixPolynomial::trim() {
  double max_norm = 0.0;
  for (const CMat& c : coeffs_) max_norm = std::max(max_norm, c.norm());
  const double tol = 1e-13 * std::max(1.0, max_norm);
  while (coeffs_.size() > 1 && coeffs_.back().norm() <= tol) coeffs_.pop_back();
}

CMat MatrixPolynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return CMat::Zero(p_, p_);
  return coeffs_[k];
}

CMat MatrixPolynomial::eval(Cplx lambda) const {
  CMat acc = coeffs_.back();
  for (int k = degree() - 1; k >= 0; --k) acc = (lambda * acc + coeffs_[k]).eval();
  return acc;
}

MatrixPolynomial MatrixPolynomial::operator+(const MatrixPolynomial& rhs) const {
  if (p_ != rhs.p_) throw ShapeMismatch("polynomial block sizes differ");
  std::vector<CMat> out(std::max(coeffs_.size(), rhs.coeffs_.size()), CMat::Zero(p_, p_));
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = coeff(static_cast<int>(k)) + rhs.coeff(static_cast<int>(k));
  return MatrixPolynomial(p_, std::move(out));
}

MatrixPolynomial MatrixPolynomial::operator-(const MatrixPolynomial& rhs) const {
  return *this + rhs.scaled(-1.0);
}

MatrixPolynomial MatrixPolynomial::scaled(Cplx factor) const {
  std::vector<CMat> out = coeffs_;
  for (CMat& c : out) c *= factor;
  return MatrixPolynomial(p_, std::move(out));
}

MatrixPolynomial MatrixPolynomial::times_scalar_poly(const std::vector<Cplx>& s) const {
  std::vector<CMat> out(coeffs_.size() + s.size() - 1, CMat::Zero(p_, p_));
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < coeffs_.size(); ++b) out[a + b] += s[a] * coeffs_[b];
  return MatrixPolynomial(p_, std::move(out));
}

MatrixPolynomial MatrixPolynomial::shifted(int k) const {
  std::vector<CMat> out(coeffs_.size() + k, CMat::Zero(p_, p_));
  for (std::size_t b = 0; b < coeffs_.size(); ++b) out[b + k] = coeffs_[b];
  return MatrixPolynomial(p_, std::move(out));
}

MatrixPolynomial MatrixPolynomial::conjugated() const {
  std::vector<CMat> out = coeffs_;
  for (CMat& c : out) c = c.adjoint().eval();
  return MatrixPolynomial(p_, std::move(out));
}

CMat SharpForm::eval(Cplx lambda) const {
  if (tag == GeometryTag::HalfPlane) return conj.eval(lambda);
  if (lambda == Cplx{0.0, 0.0})
    throw EvalAtZero("disc sharp form has a pole at the origin");
  return conj.eval(1.0 / lambda);
}

MatrixPolynomial SharpForm::reversed() const {
  if (tag == GeometryTag::HalfPlane) return conj;
  const int d = conj.degree();
  std::vector<CMat> out(d + 1, CMat::Zero(conj.p(), conj.p()));
  for (int k = 0; k <= d; ++k) out[k] = conj.coeff(d - k);
  return MatrixPolynomial(conj.p(), std::move(out));
}

SharpForm sharp(const MatrixPolynomial& f, GeometryTag tag) {
  return SharpForm{tag, f.conjugated()};
}

Cplx BlaschkeFactor::operator()(Cplx lambda) const {
  if (tag == GeometryTag::Disc)
    return (lambda - alpha) / (1.0 - lambda * std::conj(alpha));
  return (lambda - alpha) / (lambda - std::conj(alpha));
}

BlaschkeFactor blaschke(Cplx alpha, GeometryTag tag) {
  if (!interior_point(alpha, tag))
    throw AlphaOutOfRegion("blaschke parameter must lie inside the region");
  return BlaschkeFactor{alpha, tag};
}

Cplx rho(Cplx omega, Cplx lambda, GeometryTag tag) {
  if (tag == GeometryTag::Disc) return 1.0 - lambda * std::conj(omega);
  return -2.0 * kPi * kI * (lambda - std::conj(omega));
}

}  // namespace matmoment
