#include "matmoment/debranges.hpp"

#include <Eigen/Eigenvalues>

namespace matmoment {

namespace {

// F(lambda) u as a polynomial: coefficient k is the k-th block row of u.
MatrixPolynomial poly_from_column(ProblemDims dims, const CMat& u) {
  std::vector<CMat> coeffs(dims.n + 1);
  for (int k = 0; k <= dims.n; ++k) coeffs[k] = u.block(k * dims.p, 0, dims.p, dims.p);
  return MatrixPolynomial(dims.p, std::move(coeffs));
}

}  // namespace

SpaceData::SpaceData(MomentKind kind, GramPair gram)
    : kind_(kind), gram_(std::move(gram)), shift_(gram_.dims) {
  const int n = dims().n;
  u_.reserve(n + 1);
  for (int j = 0; j <= n; ++j) {
    const CMat inv_sqrt = hermitian_inv_sqrt(gram_.gamma(j, j));
    u_.push_back(gram_.Gamma * e(j) * inv_sqrt);
  }
  N0_ = gram_.Gamma - u_[0] * u_[0].adjoint();
  Ndot_ = gram_.Gamma - u_[n] * u_[n].adjoint();
}

SpaceData SpaceData::from_moments(const MatrixMoments& moments) {
  return SpaceData(moments.kind, build_gram(moments));
}

CMat SpaceData::z(Cplx alpha) const {
  const CMat F = monomial_row(dims(), alpha);
  const CMat K = F * gram_.Gamma * F.adjoint();
  return gram_.Gamma * F.adjoint() * hermitian_inv_sqrt(K);
}

CMat SpaceData::annihilator(Cplx alpha) const {
  const CMat za = z(alpha);
  return gram_.Gamma - za * za.adjoint();
}

CMat SpaceData::kernel(Cplx omega, Cplx lambda) const {
  return monomial_row(dims(), lambda) * gram_.Gamma *
         monomial_row(dims(), omega).adjoint();
}

CMat SpaceData::w_last() const {
  const int n = dims().n;
  if (n < 1) throw ShapeMismatch("two-column data needs order at least 1");
  const CMat gnn_inv = gram_.gamma(n, n).inverse();
  const CMat v = e(n - 1) - e(n) * gnn_inv * gram_.gamma(n, n - 1);
  return gram_.Gamma * v * hermitian_inv_sqrt(gram_.gamma(n, n));
}

CMat SpaceData::lower_moment_triangle() const {
  // Built from the first block column; on Toeplitz data the entries are the
  // moments h_0, 2h_1, ..., 2h_n repeated down the diagonals.
  const int p = dims().p, n = dims().n;
  CMat L = CMat::Zero(dims().m(), dims().m());
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= i; ++j) {
      const CMat hk = gram_.g(i - j, 0);
      L.block(i * p, j * p, p, p) = (i == j) ? hk : (2.0 * hk).eval();
    }
  return L;
}

bool SpaceData::looks_toeplitz(double tol) const {
  return toeplitz_structure_residual(dims(), gram_.G) <= tol;
}

bool SpaceData::looks_hankel(double tol) const {
  return hankel_structure_residual(dims(), gram_.G) <= tol;
}

CMat DeBrangesPair::kernel(Cplx omega, Cplx lambda) const {
  const Cplx denom = rho(omega, lambda, tag);
  return (plus.eval(lambda) * plus.eval(omega).adjoint() -
          minus.eval(lambda) * minus.eval(omega).adjoint()) /
         denom;
}

double DeBrangesPair::validate(int samples) const {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    // Closed-region sweep: interior rings plus the boundary.
    const double frac = static_cast<double>(s) / samples;
    Cplx w;
    if (tag == GeometryTag::Disc) {
      const double r = (s % 4) * (1.0 / 3.0);
      w = r * std::exp(kI * (2.0 * kPi * frac));
    } else {
      const double height = (s % 4) * 0.7;
      w = Cplx(-2.5 + 5.0 * frac, height);
    }
    const CMat Ep = plus.eval(w);
    Eigen::JacobiSVD<CMat> svd(Ep, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues().minCoeff();
    if (!(smin > 1e-12 * std::max(1.0, Ep.norm()))) return 1.0;
    const CMat ratio = Ep.partialPivLu().solve(minus.eval(w));
    const double top = Eigen::JacobiSVD<CMat>(ratio).singularValues().maxCoeff();
    worst = std::max(worst, top - 1.0);
  }
  return worst;
}

DeBrangesPair toeplitz_pair(const SpaceData& data) {
  if (!data.looks_toeplitz()) throw NotToeplitz("two-column pair needs Toeplitz data");
  const int n = data.dims().n;
  MatrixPolynomial plus = poly_from_column(data.dims(), data.u(0));
  MatrixPolynomial minus = poly_from_column(data.dims(), data.u(n)).shifted(1);
  return DeBrangesPair{std::move(minus), std::move(plus), GeometryTag::Disc,
                       PairConstruction::ToeplitzTwoColumn};
}

DeBrangesPair toeplitz_pair_alpha(const SpaceData& data, Cplx alpha) {
  if (!data.looks_toeplitz()) throw NotToeplitz("alpha pair needs Toeplitz data");
  const double r = std::abs(alpha);
  if (!(r > 0.0 && r < 1.0))
    throw AlphaOutOfRegion("alpha must lie in the punctured open disc");
  const Cplx reflected = 1.0 / std::conj(alpha);
  const double scale = 1.0 / std::sqrt(1.0 - r * r);
  MatrixPolynomial plus = poly_from_column(data.dims(), data.z(alpha))
                              .times_scalar_poly({scale, -std::conj(alpha) * scale});
  MatrixPolynomial minus = poly_from_column(data.dims(), data.z(reflected))
                               .times_scalar_poly({-alpha * scale, scale});
  return DeBrangesPair{std::move(minus), std::move(plus), GeometryTag::Disc,
                       PairConstruction::ToeplitzAlpha, alpha};
}

DeBrangesPair hankel_pair(const SpaceData& data, Cplx alpha) {
  if (!data.looks_hankel()) throw NotHankel("alpha pair needs Hankel data");
  if (!(alpha.imag() > 0.0))
    throw AlphaOutOfRegion("alpha must lie in the open upper half-plane");
  const double ra = 4.0 * kPi * alpha.imag();  // rho_alpha(alpha), positive
  const Cplx s = 1.0 / std::sqrt(ra);
  // rho_w(l) = -2 pi i (l - conj w) as a scalar polynomial in l.
  const Cplx c = -2.0 * kPi * kI;
  MatrixPolynomial plus = poly_from_column(data.dims(), data.z(alpha))
                              .times_scalar_poly({-c * std::conj(alpha) * s, c * s});
  MatrixPolynomial minus = poly_from_column(data.dims(), data.z(std::conj(alpha)))
                               .times_scalar_poly({-c * alpha * s, c * s});
  return DeBrangesPair{std::move(minus), std::move(plus), GeometryTag::HalfPlane,
                       PairConstruction::HankelAlpha, alpha};
}

DeBrangesPair hankel_two_column_pair(const SpaceData& data) {
  if (!data.looks_hankel()) throw NotHankel("two-column pair needs Hankel data");
  const int n = data.dims().n;
  const double rt_pi = std::sqrt(kPi);
  const MatrixPolynomial un = poly_from_column(data.dims(), data.u(n));
  const MatrixPolynomial wn = poly_from_column(data.dims(), data.w_last());
  MatrixPolynomial plus = (un.times_scalar_poly({kI, 1.0}) - wn).scaled(rt_pi);
  MatrixPolynomial minus = (un.times_scalar_poly({-kI, 1.0}) - wn).scaled(rt_pi);
  return DeBrangesPair{std::move(minus), std::move(plus), GeometryTag::HalfPlane,
                       PairConstruction::HankelTwoColumn};
}

CMat density(const DeBrangesPair& pair, Cplx boundary_point) {
  const CMat Ep = pair.plus.eval(boundary_point);
  const CMat M = Ep * Ep.adjoint();
  Eigen::LDLT<CMat> ldlt(M);
  if (ldlt.info() != Eigen::Success ||
      ldlt.vectorD().real().minCoeff() <= 1e-14 * std::max(1.0, M.norm()))
    throw SingularAtPoint("density evaluation at a singular boundary point");
  CMat inv = ldlt.solve(CMat::Identity(M.rows(), M.cols()));
  return 0.5 * (inv + inv.adjoint());
}

SecondKindPair second_kind(const SpaceData& data, const DeBrangesPair& pair) {
  const ProblemDims dims = data.dims();
  if (pair.construction == PairConstruction::ToeplitzTwoColumn) {
    if (data.kind() != MomentKind::Trigonometric)
      throw KindMismatch("two-column second kind needs trigonometric data");
    const CMat L = data.lower_moment_triangle();
    MatrixPolynomial plus = poly_from_column(dims, L * data.u(0));
    MatrixPolynomial minus =
        poly_from_column(dims, L.adjoint() * data.u(dims.n)).shifted(1).scaled(-1.0);
    return SecondKindPair{std::move(minus), std::move(plus)};
  }
  if (pair.construction == PairConstruction::HankelAlpha) {
    if (data.kind() != MomentKind::Hamburger)
      throw KindMismatch("alpha second kind needs Hamburger data");
    const Cplx alpha = pair.alpha;
    const double ra = 4.0 * kPi * alpha.imag();
    const Cplx s = 2.0 / std::sqrt(ra);
    const CMat I = CMat::Identity(dims.m(), dims.m());
    const CMat plus_col = (I - std::conj(alpha) * data.A()) * data.z(alpha);
    const CMat minus_col = (I - alpha * data.A()) * data.z(std::conj(alpha));
    // e0^* G (I - w A)^{-1} M expands as sum_k w^k e0^* G A^k M.
    std::vector<CMat> cp(dims.n + 1), cm(dims.n + 1);
    CMat row = data.e(0).adjoint() * data.G();
    for (int k = 0; k <= dims.n; ++k) {
      cp[k] = s * row * plus_col;
      cm[k] = s * row * minus_col;
      row = (row * data.A()).eval();
    }
    return SecondKindPair{MatrixPolynomial(dims.p, std::move(cm)),
                          MatrixPolynomial(dims.p, std::move(cp))};
  }
  throw KindMismatch("second-kind companions are defined for the two-column "
                     "Toeplitz pair and the alpha-based Hankel pair");
}

CMat phi_transform(const SpaceData& data, const DeBrangesPair& pair, Cplx omega) {
  if (!interior_point(omega, pair.tag))
    throw OutOfRegion("transform requires an interior point");
  if (pair.construction == PairConstruction::ToeplitzTwoColumn) {
    const int m = data.dims().m();
    const CMat I = CMat::Identity(m, m);
    const CMat e0 = data.e(0);
    const CMat resolvent =
        (I - omega * data.A() * data.N0() * data.G()).partialPivLu().solve(e0);
    return 2.0 * e0.adjoint() * data.G() * resolvent - data.gram().g(0, 0);
  }
  if (pair.construction == PairConstruction::HankelAlpha) {
    const SecondKindPair sk = second_kind(data, pair);
    const CMat Ep = pair.plus.eval(omega);
    return Ep.adjoint()
        .partialPivLu()
        .solve(sk.plus.eval(omega).adjoint())
        .adjoint();  // E_+o(w) E_+(w)^{-1}
  }
  throw KindMismatch("transform is defined for the solution-bearing pairs");
}

MatrixPolynomial reversed_plus(const SpaceData& data) {
  const int n = data.dims().n;
  const CMat inv_sqrt = hermitian_inv_sqrt(data.gram().gamma(n, n));
  std::vector<CMat> coeffs(n + 1);
  for (int j = 0; j <= n; ++j) coeffs[j] = data.gram().gamma(n - j, n) * inv_sqrt;
  return MatrixPolynomial(data.dims().p, std::move(coeffs));
}

}  // namespace matmoment
