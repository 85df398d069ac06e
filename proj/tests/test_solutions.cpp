#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "matmoment/instances.hpp"
#include "matmoment/solutions.hpp"

using namespace matmoment;

namespace {

CMat scalar(double re, double im = 0.0) {
  CMat m(1, 1);
  m(0, 0) = Cplx(re, im);
  return m;
}

struct Setup {
  SpaceData data;
  DeBrangesPair pair;
  SecondKindPair second;
  ThetaMatrix theta;
};

Setup make(MatrixMoments moments, Cplx alpha = kI) {
  SpaceData data = SpaceData::from_moments(moments);
  DeBrangesPair pair = moments.kind == MomentKind::Trigonometric
                           ? toeplitz_pair(data)
                           : hankel_pair(data, alpha);
  SecondKindPair second = second_kind(data, pair);
  ThetaMatrix theta = assemble_theta(data, pair, second);
  return Setup{std::move(data), std::move(pair), std::move(second), std::move(theta)};
}

Setup trivial_trig() {
  return make(MatrixMoments::trigonometric({1, 1}, {scalar(1.0), scalar(0.0)}));
}

Setup trivial_hamburger() {
  return make(
      MatrixMoments::hamburger({1, 1}, {scalar(1.0), scalar(0.0), scalar(1.0)}));
}

std::vector<Cplx> interior_grid(GeometryTag tag) {
  std::vector<Cplx> pts;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      const Cplx w = tag == GeometryTag::Disc
                         ? Cplx(-0.84 + 0.28 * a, -0.84 + 0.28 * b)
                         : Cplx(-1.5 + 0.5 * a, 0.15 + 0.4 * b);
      if (interior_point(w, tag)) pts.push_back(w);
    }
  return pts;
}

double min_real_eig(const CMat& M) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (M + M.adjoint()));
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("theta blocks on the unit disc instance") {
  Setup s = trivial_trig();
  const double c = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.theta.b11.coeff(2)(0, 0) + c) <= 1e-12);
  CHECK(s.theta.b11.coeff(0).norm() <= 1e-13);
  CHECK(std::abs(s.theta.b12.coeff(0)(0, 0) - c) <= 1e-12);
  CHECK(s.theta.b12.degree() == 0);
  CHECK(std::abs(s.theta.b21.coeff(2)(0, 0) - c) <= 1e-12);
  CHECK(std::abs(s.theta.b22.coeff(0)(0, 0) - c) <= 1e-12);

  // The lower-right block is invertible at the origin.
  CHECK(std::abs(s.theta.b22.eval(0.0)(0, 0)) > 0.5);
}

TEST_CASE("theta assembly validates its inputs") {
  Setup toep = make(random_trig_instance({2, 2}, 5));
  Setup hank = make(random_hamburger_instance({2, 2}, 6));
  // Mixing the second-kind blocks across instances breaks the boundary
  // relation and must be rejected.
  CHECK_THROWS_AS(assemble_theta(toep.data, toep.pair,
                                 SecondKindPair{toep.pair.minus, toep.pair.plus}),
                  InconsistentInputs);
  CHECK_THROWS_AS(assemble_theta(hank.data, hank.pair, toep.second),
                  InconsistentInputs);
}

TEST_CASE("linear fractional transform closed forms") {
  Setup s = trivial_trig();
  SchurParameter zero = SchurParameter::zero(1, GeometryTag::Disc);
  for (Cplx w : {Cplx(0.0, 0.0), Cplx(0.4, 0.2), Cplx(-0.7, 0.1)})
    CHECK(std::abs(lft_eval(s.theta, zero, w)(0, 0) - 1.0) <= 1e-12);

  for (double sv : {0.3, -0.6, 0.85}) {
    SchurParameter S = SchurParameter::constant(scalar(sv), GeometryTag::Disc);
    for (Cplx w : {Cplx(0.2, 0.3), Cplx(-0.5, -0.2)}) {
      const Cplx expected = (1.0 - sv * w * w) / (1.0 + sv * w * w);
      CHECK(std::abs(lft_eval(s.theta, S, w)(0, 0) - expected) <= 1e-12);
    }
  }

  // Unimodular parameter: the denominator degenerates at a cube root of -1.
  SchurParameter inner = SchurParameter::blaschke_unitary(
      Cplx(0.0, 0.0), CMat::Identity(1, 1), GeometryTag::Disc);
  const Cplx bad = std::exp(kI * (kPi / 3.0));
  CHECK_THROWS_AS(lft_eval(s.theta, inner, bad), SingularDenominator);
}

TEST_CASE("transform agreement with the canonical density transform") {
  for (bool trig : {true, false}) {
    Setup s = trig ? make(random_trig_instance({2, 3}, 15))
                   : make(random_hamburger_instance({2, 2}, 16));
    SchurParameter zero = SchurParameter::zero(2, s.theta.tag);
    Rng rng(31);
    int checked = 0;
    while (checked < 10) {
      const Cplx w = s.theta.tag == GeometryTag::Disc
                         ? Cplx(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
                         : Cplx(rng.uniform(-2.0, 2.0), rng.uniform(0.3, 2.0));
      if (!interior_point(w, s.theta.tag)) continue;
      ++checked;
      CHECK(rel_residual(lft_eval(s.theta, zero, w),
                         phi_transform(s.data, s.pair, w)) <= 1e-9);
    }
  }
}

TEST_CASE("boundary densities") {
  Setup s = trivial_trig();
  SchurParameter zero = SchurParameter::zero(1, GeometryTag::Disc);
  for (int i = 0; i < 16; ++i) {
    const Cplx b = std::exp(kI * (2.0 * kPi * i / 16.0));
    CHECK(rel_residual(boundary_density(s.theta, zero, b), density(s.pair, b)) <=
          1e-12);
  }

  const double sv = 0.4;
  SchurParameter S = SchurParameter::constant(scalar(sv), GeometryTag::Disc);
  for (double t : {0.3, 1.9, 5.1}) {
    const Cplx z2 = std::exp(kI * (2.0 * t));
    const double expected = ((1.0 - sv * z2) / (1.0 + sv * z2)).real();
    CHECK(std::abs(boundary_density(s.theta, S, std::exp(kI * t))(0, 0).real() -
                   expected) <= 1e-12);
  }

  // Factorized density agrees with the radial limit of the transform. The
  // approach error is linear in 1 - r, so two radii extrapolate it away.
  Setup big = make(random_trig_instance({2, 2}, 25));
  SchurParameter Sb =
      sample_schur({SchurSpec::Type::ConstantRandom, 2, GeometryTag::Disc}, 3);
  for (int i = 0; i < 16; ++i) {
    const double t = 2.0 * kPi * i / 16.0;
    const CMat from_factorization =
        boundary_density(big.theta, Sb, std::exp(kI * t));
    const CMat phi1 = lft_eval(big.theta, Sb, (1.0 - 1e-6) * std::exp(kI * t));
    const CMat phi2 = lft_eval(big.theta, Sb, (1.0 - 2e-6) * std::exp(kI * t));
    const CMat limit = 2.0 * phi1 - phi2;
    CHECK(rel_residual(from_factorization, 0.5 * (limit + limit.adjoint())) <= 1e-7);
    CHECK(min_real_eig(from_factorization) >= -1e-12);
  }

  SchurParameter unimodular = SchurParameter::blaschke_unitary(
      Cplx(0.0, 0.0), CMat::Identity(1, 1), GeometryTag::Disc);
  CHECK_THROWS_AS(
      boundary_density(s.theta, unimodular, std::exp(kI * (kPi / 3.0))),
      BoundaryDegenerate);
}

TEST_CASE("trigonometric moment recovery and non-uniqueness") {
  Setup s = trivial_trig();
  for (double sv : {0.0, 0.3, -0.5}) {
    SchurParameter S = SchurParameter::constant(scalar(sv), GeometryTag::Disc);
    auto rec = recover_trig_moments(s.theta, S, 2, CircleQuadrature{512, 3, 1e-12});
    CHECK(std::abs(rec[0](0, 0) - 1.0) <= 1e-10);
    CHECK(std::abs(rec[1](0, 0)) <= 1e-10);
    // First unconstrained coefficient is -s: the non-uniqueness witness.
    CHECK(std::abs(rec[2](0, 0) + sv) <= 1e-10);
  }

  Setup big = make(random_trig_instance({2, 3}, 45));
  MatrixMoments mm = random_trig_instance({2, 3}, 45);
  SchurParameter zero = SchurParameter::zero(2, GeometryTag::Disc);
  auto rec0 = recover_trig_moments(big.theta, zero, big.data.dims().n);
  for (int k = 0; k <= big.data.dims().n; ++k)
    CHECK((rec0[k] - mm.h(k)).norm() <= 1e-9);

  SchurParameter Sc =
      sample_schur({SchurSpec::Type::ConstantRandom, 2, GeometryTag::Disc, {},
                    0.7},
                   9);
  auto rec1 = recover_trig_moments(big.theta, Sc, big.data.dims().n + 1);
  for (int k = 0; k <= big.data.dims().n; ++k)
    CHECK((rec1[k] - mm.h(k)).norm() <= 1e-8);
  auto recw = recover_trig_moments(big.theta, zero, big.data.dims().n + 1);
  CHECK((rec1[big.data.dims().n + 1] - recw[big.data.dims().n + 1]).norm() >= 1e-3);

  // The densities themselves separate in sup norm on the boundary.
  double sup_diff = 0.0;
  for (int i = 0; i < 64; ++i) {
    const Cplx b = std::exp(kI * (2.0 * kPi * i / 64.0));
    sup_diff = std::max(sup_diff, (boundary_density(big.theta, Sc, b) -
                                   boundary_density(big.theta, zero, b))
                                      .norm());
  }
  CHECK(sup_diff >= 1e-3);
}

TEST_CASE("hamburger moment recovery and the restricted class") {
  Setup s = trivial_hamburger();
  ChiData chi = chi_and_chi_infinity(s.pair);
  // chi(l) = -((l-i)/(l+i))^2, so chi at infinity is -1.
  CHECK(std::abs(chi.chi_infinity(0, 0) + 1.0) <= 1e-12);
  CHECK(std::abs(std::abs(chi.chi_infinity(0, 0)) - 1.0) <= 1e-12);
  for (Cplx w : {Cplx(0.5, 0.7), Cplx(-1.2, 0.4)}) {
    const Cplx expected = -std::pow((w - kI) / (w + kI), 2.0);
    CHECK(std::abs(chi.chi(w)(0, 0) - expected) <= 1e-12);
    CHECK(std::abs(chi.chi(w)(0, 0)) < 1.0);
  }

  for (double sv : {0.0, 0.5}) {
    SchurParameter S = SchurParameter::constant(scalar(sv), GeometryTag::HalfPlane);
    auto rec = recover_hamburger_moments(s.theta, S, chi.chi_infinity, 2);
    CHECK(std::abs(rec[0](0, 0) - 1.0) <= 1e-8);
    CHECK(std::abs(rec[1](0, 0)) <= 1e-8);
    CHECK(std::abs(rec[2](0, 0) - 1.0) <= 1e-8);
  }

  // S = 1 makes I + chi_inf S singular: excluded from the class.
  SchurParameter bad = SchurParameter::constant(scalar(1.0), GeometryTag::HalfPlane);
  auto rc = check_restricted_class(bad, chi.chi_infinity);
  CHECK_FALSE(rc.in_class);
  CHECK_THROWS_AS(recover_hamburger_moments(s.theta, bad, chi.chi_infinity, 2),
                  RestrictedClassViolation);

  SchurParameter zero = SchurParameter::zero(1, GeometryTag::HalfPlane);
  CHECK(check_restricted_class(zero, chi.chi_infinity).in_class);
  SchurParameter ok =
      sample_schur({SchurSpec::Type::ConstantRandom, 1, GeometryTag::HalfPlane, {},
                    0.9},
                   11);
  CHECK(check_restricted_class(ok, chi.chi_infinity).in_class);

  Setup big = make(random_hamburger_instance({2, 2}, 55), Cplx(0.3, 1.2));
  MatrixMoments mm = random_hamburger_instance({2, 2}, 55);
  ChiData big_chi = chi_and_chi_infinity(big.pair);
  CHECK(rel_residual(big_chi.chi_infinity.adjoint() * big_chi.chi_infinity,
                     CMat::Identity(2, 2)) <= 1e-10);
  SchurParameter Sb =
      sample_schur({SchurSpec::Type::ConstantRandom, 2, GeometryTag::HalfPlane, {},
                    0.6},
                   13);
  auto rec = recover_hamburger_moments(big.theta, Sb, big_chi.chi_infinity,
                                       2 * big.data.dims().n);
  for (int k = 0; k <= 2 * big.data.dims().n; ++k)
    CHECK((rec[k] - mm.h(k)).norm() <= 1e-6);
}

TEST_CASE("caratheodory property over the interior grid") {
  for (bool trig : {true, false}) {
    Setup s = trig ? make(random_trig_instance({2, 2}, 65))
                   : make(random_hamburger_instance({2, 2}, 66));
    const GeometryTag tag = s.theta.tag;
    std::vector<SchurParameter> params;
    params.push_back(SchurParameter::zero(2, tag));
    params.push_back(sample_schur({SchurSpec::Type::ConstantRandom, 2, tag, {}, 0.8}, 21));
    SchurSpec bl{SchurSpec::Type::BlaschkeUnitary, 2, tag};
    bl.scale = 0.9;
    params.push_back(sample_schur(bl, 22));
    SchurSpec pr{SchurSpec::Type::Product, 2, tag};
    pr.scale = 0.85;
    params.push_back(sample_schur(pr, 23));
    for (const auto& S : params)
      for (Cplx w : interior_grid(tag))
        CHECK(min_real_eig(lft_eval(s.theta, S, w)) >= -1e-10);
  }
}

TEST_CASE("entropy convention pinned on the unit disc instance") {
  Setup s = trivial_trig();
  SchurParameter zero = SchurParameter::zero(1, GeometryTag::Disc);

  // At the origin the zero parameter is the equality case.
  EntropyResult at0 = entropy_check(s.data, s.pair, s.theta, zero, Cplx(0.0, 0.0));
  CHECK(at0.converged);
  CHECK(std::abs(at0.lhs) <= 1e-10);
  CHECK(std::abs(at0.rhs) <= 1e-12);
  CHECK(at0.equality_case);

  // At omega = 0.3 the maximizer is the constant -chi(omega)^* = -0.09.
  const Cplx omega(0.3, 0.0);
  EntropyResult off = entropy_check(s.data, s.pair, s.theta, zero, omega);
  const double expected_rhs = -std::log(1.0 - 0.0081);
  CHECK(std::abs(off.rhs - expected_rhs) <= 1e-12);
  CHECK(std::abs(off.lhs) <= 1e-10);
  CHECK(off.gap > 1e-3);

  SchurParameter maximizer =
      SchurParameter::constant(scalar(-0.09), GeometryTag::Disc);
  EntropyResult eq = entropy_check(s.data, s.pair, s.theta, maximizer, omega);
  CHECK(std::abs(eq.gap) <= 1e-6);
  CHECK(eq.equality_case);

  // Monotone gap along c -> c * maximizer.
  double last = std::numeric_limits<double>::infinity();
  for (double c : {0.0, 0.5, 1.0}) {
    SchurParameter S = SchurParameter::constant(scalar(-0.09 * c), GeometryTag::Disc);
    EntropyResult r = entropy_check(s.data, s.pair, s.theta, S, omega);
    CHECK(r.gap < last + 1e-12);
    CHECK(r.gap > -1e-9);
    last = r.gap;
  }
  CHECK(last <= 1e-6);
}

TEST_CASE("entropy equality on the unit half-plane instance") {
  Setup s = trivial_hamburger();
  SchurParameter zero = SchurParameter::zero(1, GeometryTag::HalfPlane);
  // chi(i) = 0, so the zero parameter achieves equality at omega = i, and
  // both sides equal -ln(8 pi).
  EntropyResult eq = entropy_check(s.data, s.pair, s.theta, zero, kI);
  CHECK(eq.converged);
  const double expected = -std::log(8.0 * kPi);
  CHECK(std::abs(eq.rhs - expected) <= 1e-12);
  CHECK(std::abs(eq.lhs - expected) <= 1e-7);
  CHECK(eq.equality_case);
}

TEST_CASE("entropy inequality for random constants") {
  Setup toep = make(random_trig_instance({2, 2}, 75));
  const Cplx w_disc(0.3, 0.0);
  for (int i = 0; i < 10; ++i) {
    SchurParameter S = sample_schur(
        {SchurSpec::Type::ConstantRandom, 2, GeometryTag::Disc, {}, 0.85}, 30 + i);
    EntropyResult r = entropy_check(toep.data, toep.pair, toep.theta, S, w_disc);
    CHECK(r.gap >= -1e-7);
  }

  Setup hank = make(random_hamburger_instance({2, 2}, 76));
  for (int i = 0; i < 10; ++i) {
    SchurParameter S = sample_schur(
        {SchurSpec::Type::ConstantRandom, 2, GeometryTag::HalfPlane, {}, 0.85},
        40 + i);
    EntropyResult r = entropy_check(hank.data, hank.pair, hank.theta, S, kI);
    CHECK(r.gap >= -1e-7);
  }

  // Equality case with a matrix parameter: S = -chi(omega)^*.
  ChiData chi = chi_and_chi_infinity(hank.pair);
  SchurParameter max_param = SchurParameter::constant(
      (-chi.chi(kI).adjoint()).eval(), GeometryTag::HalfPlane);
  EntropyResult eq = entropy_check(hank.data, hank.pair, hank.theta, max_param, kI);
  CHECK(std::abs(eq.gap) <= 1e-6);
}

TEST_CASE("parameter families") {
  SchurParameter zero = SchurParameter::zero(2, GeometryTag::Disc);
  CHECK(zero(Cplx(0.3, 0.3)).norm() == 0.0);
  CHECK(zero.is_zero());

  SchurParameter clamp =
      sample_schur({SchurSpec::Type::ConstantRandom, 3, GeometryTag::Disc, {}, 0.8}, 2);
  Eigen::JacobiSVD<CMat> svd(clamp(Cplx(0.0, 0.0)));
  CHECK(std::abs(svd.singularValues().maxCoeff() - 0.8) <= 1e-12);

  Rng rng(17);
  SchurParameter bl = SchurParameter::blaschke_unitary(Cplx(0.3, -0.2), rng.unitary(2),
                                                       GeometryTag::Disc);
  for (int i = 0; i < 32; ++i) {
    const Cplx b = std::exp(kI * (2.0 * kPi * i / 32.0));
    Eigen::JacobiSVD<CMat> bsvd(bl(b));
    CHECK(std::abs(bsvd.singularValues().maxCoeff() - 1.0) <= 1e-12);
  }

  CHECK_THROWS_AS(
      SchurParameter::constant(1.5 * CMat::Identity(2, 2), GeometryTag::Disc),
      NotContractive);

  SchurParameter prod = sample_schur(
      [] {
        SchurSpec spec{SchurSpec::Type::Product, 2, GeometryTag::HalfPlane};
        spec.scale = 0.9;
        spec.factors = 3;
        return spec;
      }(),
      77);
  for (Cplx w : interior_grid(GeometryTag::HalfPlane)) {
    Eigen::JacobiSVD<CMat> psvd(prod(w));
    CHECK(psvd.singularValues().maxCoeff() <= 1.0 + 1e-12);
  }
}
