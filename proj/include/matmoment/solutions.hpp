#ifndef MATMOMENT_SOLUTIONS_HPP
#define MATMOMENT_SOLUTIONS_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "matmoment/debranges.hpp"
#include "matmoment/numerics.hpp"

namespace matmoment {

// 2p x 2p coefficient matrix of the linear fractional parameterization:
// (1/sqrt 2) [[E_-o, E_+o], [E_-, E_+]].
struct ThetaMatrix {
  MatrixPolynomial b11, b12, b21, b22;
  GeometryTag tag;

  int p() const { return b22.p(); }
  CMat eval(Cplx omega) const;
  CMat block(int i, int j, Cplx omega) const;
};

// Populates the blocks and validates the boundary relation
// Theta j_p Theta^* = J_p on eight boundary samples (residual <= 1e-9).
ThetaMatrix assemble_theta(const SpaceData& data, const DeBrangesPair& pair,
                           const SecondKindPair& second);

// Holomorphic contraction on the region, evaluable pointwise. Validated on
// a 64-point grid at construction.
class SchurParameter {
 public:
  static SchurParameter zero(int p, GeometryTag tag);
  static SchurParameter constant(const CMat& value, GeometryTag tag);
  // scale * b_alpha(omega) * U; boundary norm equals |scale|.
  static SchurParameter blaschke_unitary(Cplx alpha, const CMat& unitary,
                                         GeometryTag tag, double scale = 1.0);
  static SchurParameter product(const std::vector<SchurParameter>& factors);

  CMat operator()(Cplx omega) const { return eval_(omega); }
  GeometryTag tag() const { return tag_; }
  int p() const { return p_; }
  const std::string& description() const { return description_; }
  bool is_zero() const { return zero_; }

 private:
  SchurParameter(int p, GeometryTag tag, std::string description,
                 std::function<CMat(Cplx)> eval, bool zero = false);
  void validate_contraction() const;

  int p_;
  GeometryTag tag_;
  std::string description_;
  std::function<CMat(Cplx)> eval_;
  bool zero_ = false;
};

struct SchurSpec {
  enum class Type { Zero, Constant, ConstantRandom, BlaschkeUnitary, Product };
  Type type = Type::Zero;
  int p = 1;
  GeometryTag tag = GeometryTag::Disc;
  CMat matrix;             // Constant
  double sigma_max = 0.8;  // ConstantRandom
  Cplx alpha{0.0, 0.0};    // BlaschkeUnitary (defaulted per geometry if 0)
  double scale = 1.0;
  int factors = 2;         // Product of scaled Blaschke-unitary terms
};

SchurParameter sample_schur(const SchurSpec& spec, std::uint64_t seed);

// T_Theta[S](omega) = (Theta11 S + Theta12)(Theta21 S + Theta22)^{-1}.
// The denominator is inverted by a dense solve per point; a singular
// denominator is reported, never regularized.
CMat lft_eval(const ThetaMatrix& theta, const SchurParameter& S, Cplx omega);

// Boundary density Delta_S = (Phi + Phi^*)/2 through the factorization
// (S^* Theta21^* + Theta22^*)^{-1} (I - S^*S) (Theta21 S + Theta22)^{-1} / 2.
CMat boundary_density(const ThetaMatrix& theta, const SchurParameter& S,
                      Cplx boundary_point);

// Fourier coefficients of the boundary density, k = 0..k_max.
std::vector<CMat> recover_trig_moments(const ThetaMatrix& theta,
                                       const SchurParameter& S, int k_max,
                                       CircleQuadrature cfg = {});

// Power moments int mu^k Delta_S dmu, k = 0..k_max. The parameter must lie
// in the restricted class fixed by chi_infinity.
std::vector<CMat> recover_hamburger_moments(const ThetaMatrix& theta,
                                            const SchurParameter& S,
                                            const CMat& chi_infinity, int k_max,
                                            LineQuadrature cfg = {});

struct ChiData {
  std::function<CMat(Cplx)> chi;  // E_+^{-1} E_-
  CMat chi_infinity;              // leading-coefficient ratio, unitary
};

// The inner ratio of a half-plane pair and its value at i*infinity,
// cross-validated against chi(i nu) for large nu.
ChiData chi_and_chi_infinity(const DeBrangesPair& pair);

struct RestrictedClassCheck {
  bool in_class = false;
  std::array<double, 3> values{};  // nu^{-1} ||(I + chi_inf S(i nu))^{-1}|| at 1e2,1e3,1e4
};

RestrictedClassCheck check_restricted_class(const SchurParameter& S,
                                            const CMat& chi_infinity);

// Entropy comparison at an interior point:
//   lhs = Poisson_omega[ln det Delta_S]
//   rhs = -ln det(E_+(omega) E_+(omega)^* - E_-(omega) E_-(omega)^*)
// lhs <= rhs for every Schur parameter, with equality exactly at the
// constant S = -chi(omega)^*.
struct EntropyResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // rhs - lhs, nonnegative up to quadrature error
  bool equality_case = false;
  bool converged = false;
};

EntropyResult entropy_check(const SpaceData& data, const DeBrangesPair& pair,
                            const ThetaMatrix& theta, const SchurParameter& S,
                            Cplx omega);

}  // namespace matmoment

#endif
