#include "matmoment/identities.hpp"

#include <random>

#include "matmoment/numerics.hpp"
#include "matmoment/solutions.hpp"

namespace matmoment {

IdentityReport IdentityReport::make(std::string name, double residual, double tol,
                                    int samples, std::uint64_t seed) {
  IdentityReport r;
  r.name = std::move(name);
  r.max_residual = residual;
  r.tolerance = tol;
  r.samples = samples;
  r.seed = seed;
  r.pass = residual <= tol;
  return r;
}

std::vector<Cplx> interior_samples(GeometryTag tag, int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto unif = [&] { return (gen() >> 11) * 0x1.0p-53; };
  std::vector<Cplx> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (tag == GeometryTag::Disc) {
      const double r = 0.9 * std::sqrt(unif());
      const double t = 2.0 * kPi * unif();
      out.push_back(r * std::exp(kI * t));
    } else {
      out.push_back(Cplx(-3.0 + 6.0 * unif(), 0.1 + 2.9 * unif()));
    }
  }
  return out;
}

std::vector<Cplx> boundary_samples(GeometryTag tag, int count) {
  std::vector<Cplx> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (tag == GeometryTag::Disc) {
      out.push_back(std::exp(kI * (2.0 * kPi * i / count)));
    } else {
      // Chebyshev-spread reals, away from huge magnitudes.
      out.push_back(Cplx(3.0 * std::cos(kPi * (i + 0.5) / count), 0.0));
    }
  }
  return out;
}

namespace {

CMat F_of(const SpaceData& d, Cplx l) { return monomial_row(d.dims(), l); }

}  // namespace

std::vector<IdentityReport> check_hankel_chain(const SpaceData& data, Cplx alpha,
                                               std::uint64_t seed, int samples,
                                               IdentityTolerances tol) {
  if (alpha.imag() == 0.0)
    throw AlphaOutOfRegion("hankel chain needs a non-real point");
  const Cplx ac = std::conj(alpha);
  const CMat Na = data.annihilator(alpha);
  const CMat Nc = data.annihilator(ac);
  const CMat I = CMat::Identity(data.dims().m(), data.dims().m());
  const CMat& A = data.A();

  const auto ls = interior_samples(GeometryTag::HalfPlane, samples, seed);
  const auto ws = interior_samples(GeometryTag::HalfPlane, samples, seed ^ 0x9e3779b9ULL);

  double r_kernel = 0.0, r_onesided = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Cplx l = ls[i], w = ws[i];
    const CMat Fl = F_of(data, l);
    const CMat Fw = F_of(data, w);
    r_kernel = std::max(
        r_kernel,
        rel_residual((l - ac) * (std::conj(w) - alpha) * Fl * Na * Fw.adjoint(),
                     (l - alpha) * (std::conj(w) - ac) * Fl * Nc * Fw.adjoint()));
    r_onesided = std::max(
        r_onesided, rel_residual((l - ac) * Fl * Na * (I - alpha * A.adjoint()),
                                 (l - alpha) * Fl * Nc * (I - ac * A.adjoint())));
  }
  const double r_twosided =
      rel_residual((I - ac * A) * Na * (I - alpha * A.adjoint()),
                   (I - alpha * A) * Nc * (I - ac * A.adjoint()));

  return {IdentityReport::make("hankel-chain-kernel", r_kernel, tol.algebraic,
                               samples, seed),
          IdentityReport::make("hankel-chain-one-sided", r_onesided, tol.algebraic,
                               samples, seed),
          IdentityReport::make("hankel-chain-two-sided", r_twosided, tol.algebraic,
                               1, seed)};
}

std::vector<IdentityReport> check_toeplitz_chain(const SpaceData& data, Cplx alpha,
                                                 std::uint64_t seed, int samples,
                                                 IdentityTolerances tol) {
  if (alpha == Cplx{0.0, 0.0})
    throw AlphaOutOfRegion("toeplitz chain needs a nonzero point");
  const Cplx ac = std::conj(alpha);
  const Cplx reflected = 1.0 / ac;
  const CMat Na = data.annihilator(alpha);
  const CMat Nr = data.annihilator(reflected);
  const CMat I = CMat::Identity(data.dims().m(), data.dims().m());
  const CMat& A = data.A();

  const auto ls = interior_samples(GeometryTag::Disc, samples, seed);
  const auto ws = interior_samples(GeometryTag::Disc, samples, seed ^ 0x9e3779b9ULL);

  double r_kernel = 0.0, r_onesided = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Cplx l = ls[i], w = ws[i];
    const CMat Fl = F_of(data, l);
    const CMat Fw = F_of(data, w);
    r_kernel = std::max(
        r_kernel,
        rel_residual(
            (1.0 - l * ac) * (1.0 - alpha * std::conj(w)) * Fl * Na * Fw.adjoint(),
            (l - alpha) * (std::conj(w) - ac) * Fl * Nr * Fw.adjoint()));
    const CMat left =
        (1.0 - l * ac) * Fl * Na *
        (I - ac * A.adjoint()).partialPivLu().solve(I).eval();
    const CMat right =
        -(l - alpha) * Fl * Nr *
        (alpha * I - A.adjoint()).partialPivLu().solve(I).eval();
    r_onesided = std::max(r_onesided, rel_residual(left, right));
  }
  const double r_twosided =
      rel_residual((ac * I - A) * Na * (alpha * I - A.adjoint()),
                   (I - alpha * A) * Nr * (I - ac * A.adjoint()));

  return {IdentityReport::make("toeplitz-chain-kernel", r_kernel, tol.algebraic,
                               samples, seed),
          IdentityReport::make("toeplitz-chain-one-sided", r_onesided,
                               tol.with_inverse, samples, seed),
          IdentityReport::make("toeplitz-chain-two-sided", r_twosided,
                               tol.algebraic, 1, seed)};
}

std::vector<IdentityReport> check_toeplitz_limits(const SpaceData& data,
                                                  std::uint64_t seed,
                                                  IdentityTolerances tol) {
  const CMat& A = data.A();
  const CMat& N0 = data.N0();
  const CMat& Nd = data.Ndot();
  const double r1 = rel_residual(A * N0 * A.adjoint(), Nd);
  const double r2 = rel_residual(A * N0, Nd * A);
  double r3 = 0.0;
  for (Cplx l : interior_samples(GeometryTag::Disc, 10, seed)) {
    const CMat Fl = F_of(data, l);
    r3 = std::max(r3, rel_residual(Fl * N0 * A.adjoint(), l * Fl * Nd));
  }
  return {IdentityReport::make("shifted-annihilator", r1, tol.algebraic, 1, seed),
          IdentityReport::make("annihilator-intertwining", r2, tol.algebraic, 1, seed),
          IdentityReport::make("annihilator-kernel-form", r3, tol.algebraic, 10, seed)};
}

IdentityReport check_gohberg_heinig(const SpaceData& data, IdentityTolerances tol) {
  const CMat& A = data.A();
  const int n = data.dims().n;
  const CMat core = data.u(n) * data.u(n).adjoint() -
                    A * data.u(0) * data.u(0).adjoint() * A.adjoint();
  CMat sum = CMat::Zero(A.rows(), A.cols());
  CMat Aj = CMat::Identity(A.rows(), A.cols());
  for (int j = 0; j <= n; ++j) {
    sum += Aj * core * Aj.adjoint();
    Aj = (Aj * A).eval();
  }
  const double r = (data.Gamma() - sum).norm() / data.Gamma().norm();
  return IdentityReport::make("gohberg-heinig", r, tol.algebraic, 1, 0);
}

std::vector<IdentityReport> check_hankel_gh_type(const SpaceData& data,
                                                 std::uint64_t seed,
                                                 IdentityTolerances tol) {
  const CMat& A = data.A();
  const int n = data.dims().n;
  const CMat un = data.u(n);
  const CMat wn = data.w_last();
  const CMat B = un * wn.adjoint() - wn * un.adjoint();
  CMat sum = un * un.adjoint();
  CMat Aj = CMat::Identity(A.rows(), A.cols());
  for (int j = 0; j <= n; ++j) {
    sum += (A * Aj) * B * Aj;
    Aj = (Aj * A).eval();
  }
  const double r1 = (data.Gamma() - sum).norm() / data.Gamma().norm();
  double r2 = 0.0;
  for (Cplx l : interior_samples(GeometryTag::HalfPlane, 10, seed)) {
    const CMat Fl = F_of(data, l);
    r2 = std::max(r2, rel_residual(l * Fl * data.Ndot(), Fl * A.adjoint() * data.Ndot()));
  }
  return {IdentityReport::make("hankel-gh-sum", r1, tol.algebraic, 1, seed),
          IdentityReport::make("hankel-shift-kernel", r2, tol.algebraic, 10, seed)};
}

IdentityReport check_isometry_criterion(ProblemDims dims, const CMat& G,
                                        MomentKind kind, IdentityTolerances tol) {
  const double r = kind == MomentKind::Trigonometric
                       ? toeplitz_structure_residual(dims, G)
                       : hankel_structure_residual(dims, G);
  const char* name = kind == MomentKind::Trigonometric ? "toeplitz-isometry"
                                                       : "hankel-isometry";
  return IdentityReport::make(name, r, tol.algebraic, 1, 0);
}

std::vector<IdentityReport> check_resolvent_identities(const SpaceData& data,
                                                       const DeBrangesPair& pair,
                                                       std::uint64_t seed,
                                                       IdentityTolerances tol) {
  if (pair.construction != PairConstruction::ToeplitzTwoColumn)
    throw KindMismatch("resolvent identities hold for the two-column Toeplitz pair");
  const ProblemDims dims = data.dims();
  const int m = dims.m();
  const CMat I = CMat::Identity(m, m);
  const CMat e0 = data.e(0);
  const CMat g00_inv_sqrt = hermitian_inv_sqrt(data.gram().gamma(0, 0));
  const SharpForm minus_sharp = sharp(pair.minus, GeometryTag::Disc);

  double r_inverse = 0.0, r_column = 0.0;
  for (Cplx w : interior_samples(GeometryTag::Disc, 10, seed)) {
    const CMat lhs_inv = pair.plus.eval(w).partialPivLu().solve(
        CMat::Identity(dims.p, dims.p));
    const CMat inner =
        (I - w * data.N0() * data.G() * data.A()).partialPivLu().solve(data.u(0));
    const CMat rhs_inv =
        (CMat::Identity(dims.p, dims.p) -
         w * data.u(0).adjoint() * data.G() * data.A() * inner) *
        g00_inv_sqrt;
    r_inverse = std::max(r_inverse, rel_residual(lhs_inv, rhs_inv));

    if (std::abs(w) > 0.05) {
      const CMat lhs_col =
          e0.adjoint() * data.G() *
          (I - w * data.A() * data.N0() * data.G()).partialPivLu().solve(data.u(dims.n));
      const CMat rhs_col =
          (w * minus_sharp.eval(w)).partialPivLu().solve(CMat::Identity(dims.p, dims.p));
      r_column = std::max(r_column, rel_residual(lhs_col, rhs_col));
    }
  }

  // Fourier coefficients of the boundary density against the closed form.
  double r_fourier = 0.0;
  const int k_max = 2 * dims.n + 4;
  auto delta = [&](double t) { return density(pair, std::exp(kI * t)); };
  const auto coeffs = fourier_coeffs(delta, 0, k_max, CircleQuadrature{1024, 4, 1e-12});
  const CMat step = data.A() * data.N0() * data.G();
  CMat row = e0.adjoint() * data.G();
  for (int k = 0; k <= k_max; ++k) {
    const CMat closed = row * e0;
    r_fourier = std::max(r_fourier, rel_residual(coeffs[k], closed));
    row = (row * step).eval();
  }

  return {IdentityReport::make("resolvent-plus-inverse", r_inverse,
                               tol.with_inverse, 10, seed),
          IdentityReport::make("resolvent-minus-column", r_column,
                               tol.with_inverse, 10, seed),
          IdentityReport::make("density-fourier-closed-form", r_fourier,
                               tol.with_quadrature, k_max + 1, seed)};
}

std::vector<IdentityReport> check_hamburger_inverse_identities(
    const SpaceData& data, const DeBrangesPair& pair, std::uint64_t seed,
    IdentityTolerances tol) {
  if (pair.construction != PairConstruction::HankelAlpha)
    throw KindMismatch("inverse identities hold for the alpha-based Hankel pair");
  const ProblemDims dims = data.dims();
  const int m = dims.m();
  const CMat I = CMat::Identity(m, m);
  const Cplx alpha = pair.alpha;
  const CMat za = data.z(alpha);
  const CMat e0za = data.e(0).adjoint() * za;
  const CMat e0za_inv = e0za.partialPivLu().solve(CMat::Identity(dims.p, dims.p));
  const CMat Q = I - za * e0za_inv * data.e(0).adjoint();
  const double r_idem = rel_residual(Q * Q, Q);

  const double ra = 4.0 * kPi * alpha.imag();
  double r_realization = 0.0, r_phi = 0.0;
  for (Cplx l : interior_samples(GeometryTag::HalfPlane, 10, seed)) {
    const CMat lhs = za * pair.plus.eval(l).partialPivLu().solve(
                              CMat::Identity(dims.p, dims.p));
    const CMat rhs = (std::sqrt(ra) / rho(alpha, l, GeometryTag::HalfPlane)) *
                     ((I - l * data.A()) *
                      (I - l * Q * data.A()).partialPivLu().solve(za * e0za_inv));
    r_realization = std::max(r_realization, rel_residual(lhs, rhs));

    const CMat phi_ratio = phi_transform(data, pair, l);
    const CMat phi_resolvent =
        (2.0 / rho(alpha, l, GeometryTag::HalfPlane)) *
        (data.e(0).adjoint() * data.G() * (I - std::conj(alpha) * data.A()) *
         (I - l * Q * data.A()).partialPivLu().solve(za * e0za_inv));
    r_phi = std::max(r_phi, rel_residual(phi_ratio, phi_resolvent));
  }

  return {IdentityReport::make("projector-idempotent", r_idem, 1e-11, 1, seed),
          IdentityReport::make("plus-inverse-realization", r_realization,
                               tol.with_inverse, 10, seed),
          IdentityReport::make("transform-resolvent-form", r_phi, tol.with_inverse,
                               10, seed)};
}

CMat realization_row_top(const SpaceData& data) {
  const double rt2 = std::sqrt(2.0);
  if (data.kind() == MomentKind::Trigonometric) {
    const CMat L = data.lower_moment_triangle();
    return (-1.0 / rt2) * (data.e(0).adjoint() * L.adjoint());
  }
  return (-1.0 / (rt2 * kPi * kI)) * (data.e(0).adjoint() * data.G() * data.A());
}

CMat realization_row_bottom(const SpaceData& data) {
  return (1.0 / std::sqrt(2.0)) * data.e(0).adjoint();
}

std::vector<IdentityReport> check_J_identity(const ThetaMatrix& theta,
                                             const SpaceData& data,
                                             std::uint64_t seed, int samples,
                                             IdentityTolerances tol) {
  const int p = data.dims().p;
  const int m = data.dims().m();
  CMat J = CMat::Zero(2 * p, 2 * p);
  J.block(0, p, p, p) = -CMat::Identity(p, p);
  J.block(p, 0, p, p) = -CMat::Identity(p, p);
  CMat j = CMat::Identity(2 * p, 2 * p);
  j.block(p, p, p, p) = -CMat::Identity(p, p);

  const CMat C1 = realization_row_top(data);
  const CMat C2 = realization_row_bottom(data);
  CMat C(2 * p, m);
  C.topRows(p) = C1;
  C.bottomRows(p) = C2;
  const CMat I = CMat::Identity(m, m);

  const GeometryTag tag = data.tag();
  const auto ls = interior_samples(tag, samples, seed);
  const auto ws = interior_samples(tag, samples, seed ^ 0x5851f42dULL);
  double r_main = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Cplx l = ls[i], w = ws[i];
    const CMat Fl = C * (I - l * data.A()).partialPivLu().solve(I).eval();
    const CMat Fw = C * (I - w * data.A()).partialPivLu().solve(I).eval();
    const CMat lhs = J - theta.eval(l) * j * theta.eval(w).adjoint();
    const CMat rhs = rho(w, l, tag) * Fl * data.Gamma() * Fw.adjoint();
    r_main = std::max(r_main, rel_residual(lhs, rhs));
  }

  double r_boundary = 0.0;
  for (Cplx b : boundary_samples(tag, 8)) {
    const CMat T = theta.eval(b);
    r_boundary = std::max(r_boundary, rel_residual(T * j * T.adjoint(), J));
  }

  return {IdentityReport::make("j-identity", r_main, tol.with_inverse, samples, seed),
          IdentityReport::make("j-identity-boundary", r_boundary, tol.with_inverse,
                               8, seed)};
}

IdentityReport check_displacement(const SpaceData& data, IdentityTolerances tol) {
  const int p = data.dims().p;
  CMat J = CMat::Zero(2 * p, 2 * p);
  J.block(0, p, p, p) = -CMat::Identity(p, p);
  J.block(p, 0, p, p) = -CMat::Identity(p, p);
  const CMat C1 = realization_row_top(data);
  const CMat C2 = realization_row_bottom(data);
  CMat C(2 * p, data.dims().m());
  C.topRows(p) = C1;
  C.bottomRows(p) = C2;
  const CMat disp = C.adjoint() * J * C;
  const CMat& A = data.A();
  double r;
  const char* name;
  if (data.kind() == MomentKind::Trigonometric) {
    r = rel_residual(data.G() - A.adjoint() * data.G() * A, disp);
    name = "displacement-toeplitz";
  } else {
    r = rel_residual(A.adjoint() * data.G() - data.G() * A,
                     (-2.0 * kPi * kI) * disp);
    name = "displacement-hankel";
  }
  return IdentityReport::make(name, r, tol.algebraic, 1, 0);
}

IdentityReport check_kernel_inverse(const SpaceData& data, std::uint64_t seed,
                                    int samples, IdentityTolerances tol) {
  const GeometryTag tag = data.tag();
  const auto ls = interior_samples(tag, samples, seed);
  const auto ws = interior_samples(tag, samples, seed ^ 0x2545f491ULL);
  double r = 0.0;
  const int p = data.dims().p;
  for (int i = 0; i < samples; ++i) {
    const Cplx l = ls[i], w = ws[i];
    const CMat zw = data.z(w);
    const CMat Flz = monomial_row(data.dims(), l) * zw;
    Eigen::PartialPivLU<CMat> lu(Flz);
    if (std::abs(lu.determinant()) < 1e-8) continue;
    const CMat K = data.kernel(w, l);
    const CMat lhs = K.partialPivLu().solve(CMat::Identity(p, p));
    const CMat rhs = data.kernel(w, w).partialPivLu().solve(
        monomial_row(data.dims(), w) * zw * lu.solve(CMat::Identity(p, p)));
    r = std::max(r, rel_residual(lhs, rhs));
  }
  return IdentityReport::make("kernel-inverse-factorization", r, tol.with_inverse,
                              samples, seed);
}

std::vector<IdentityReport> run_identity_suite(const SpaceData& data,
                                               std::uint64_t seed,
                                               IdentityTolerances tol) {
  std::vector<IdentityReport> out;
  auto append = [&](std::vector<IdentityReport> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };

  out.push_back(check_isometry_criterion(data.dims(), data.G(), data.kind(), tol));
  const bool structured = data.kind() == MomentKind::Trigonometric
                              ? data.looks_toeplitz()
                              : data.looks_hankel();
  if (data.kind() == MomentKind::Trigonometric) {
    append(check_toeplitz_chain(data, Cplx(0.45, 0.2), seed, 20, tol));
    append(check_toeplitz_limits(data, seed, tol));
    out.push_back(check_gohberg_heinig(data, tol));
    if (structured) {
      const DeBrangesPair pair = toeplitz_pair(data);
      append(check_resolvent_identities(data, pair, seed, tol));
      const ThetaMatrix theta = assemble_theta(data, pair, second_kind(data, pair));
      append(check_J_identity(theta, data, seed, 20, tol));
    }
  } else {
    append(check_hankel_chain(data, Cplx(0.3, 0.8), seed, 20, tol));
    append(check_hankel_gh_type(data, seed, tol));
    if (structured) {
      const DeBrangesPair pair = hankel_pair(data);
      append(check_hamburger_inverse_identities(data, pair, seed, tol));
      const ThetaMatrix theta = assemble_theta(data, pair, second_kind(data, pair));
      append(check_J_identity(theta, data, seed, 20, tol));
    }
  }
  out.push_back(check_displacement(data, tol));
  out.push_back(check_kernel_inverse(data, seed, 10, tol));
  if (!structured) {
    // The pair-bound identities have no meaning off the layout; record the
    // skipped block as a named failure so the report stays explicit.
    IdentityReport r;
    r.name = "pair-construction (structure precondition violated)";
    r.max_residual = std::numeric_limits<double>::infinity();
    r.tolerance = tol.algebraic;
    r.samples = 0;
    r.pass = false;
    r.seed = seed;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace matmoment
