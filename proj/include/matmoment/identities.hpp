#ifndef MATMOMENT_IDENTITIES_HPP
#define MATMOMENT_IDENTITIES_HPP

#include <string>
#include <vector>

#include "matmoment/debranges.hpp"

namespace matmoment {

struct ThetaMatrix;  // solutions.hpp

// Outcome of one identity sweep. pass holds iff max_residual <= tolerance;
// residuals are relative Frobenius.
struct IdentityReport {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool pass = false;
  std::uint64_t seed = 0;

  static IdentityReport make(std::string name, double residual, double tol,
                             int samples, std::uint64_t seed);
};

// Seeded interior sample points: |z| <= 0.9 for the disc, the box
// [-3,3] x i[0.1,3] for the half-plane.
std::vector<Cplx> interior_samples(GeometryTag tag, int count, std::uint64_t seed);
std::vector<Cplx> boundary_samples(GeometryTag tag, int count);

// Default tolerances: 1e-10 for purely algebraic identities, 1e-9 when a
// matrix inverse enters, 1e-8 when a quadrature backs one side.
struct IdentityTolerances {
  double algebraic = 1e-10;
  double with_inverse = 1e-9;
  double with_quadrature = 1e-8;
};

// Equivalence chain for Hankel structure at a non-real point: the kernel
// form, the one-sided resolvent form, and the two-sided matrix form. All
// three hold iff the Gram matrix is block Hankel.
std::vector<IdentityReport> check_hankel_chain(const SpaceData& data, Cplx alpha,
                                               std::uint64_t seed, int samples = 20,
                                               IdentityTolerances tol = {});

// Same chain for Toeplitz structure, with the reflected point 1/conj(alpha).
std::vector<IdentityReport> check_toeplitz_chain(const SpaceData& data, Cplx alpha,
                                                 std::uint64_t seed, int samples = 20,
                                                 IdentityTolerances tol = {});

// alpha -> 0 limits for Toeplitz data: A N0 A^* = Ndot and A N0 = Ndot A,
// plus the sampled kernel form F N0 A^* = lambda F Ndot.
std::vector<IdentityReport> check_toeplitz_limits(const SpaceData& data,
                                                  std::uint64_t seed,
                                                  IdentityTolerances tol = {});

// Gamma = sum_j A^j (u_n u_n^* - A u_0 u_0^* A^*) A^*j for Toeplitz data.
IdentityReport check_gohberg_heinig(const SpaceData& data,
                                    IdentityTolerances tol = {});

// Hankel analogues: Gamma = u_n u_n^* + sum_j A^{j+1}(u_n w_n^* - w_n u_n^*) A^j
// and lambda F Ndot = F A^* Ndot.
std::vector<IdentityReport> check_hankel_gh_type(const SpaceData& data,
                                                 std::uint64_t seed,
                                                 IdentityTolerances tol = {});

// Finite-matrix isometry criteria. The report's residual is the Toeplitz
// test for Trigonometric and the Hankel test for Hamburger.
IdentityReport check_isometry_criterion(ProblemDims dims, const CMat& G,
                                        MomentKind kind,
                                        IdentityTolerances tol = {});

// Disc resolvent identities for the two-column pair: the E_+ inverse
// realization, the E_-^# column identity, and the Fourier-coefficient
// formula checked against quadrature for k = 0..2n+4.
std::vector<IdentityReport> check_resolvent_identities(const SpaceData& data,
                                                       const DeBrangesPair& pair,
                                                       std::uint64_t seed,
                                                       IdentityTolerances tol = {});

// Half-plane inverse identities for the alpha pair: Q^2 = Q, the
// z_alpha E_+^{-1} realization against a dense solve, and the resolvent
// form of the transform against the ratio form.
std::vector<IdentityReport> check_hamburger_inverse_identities(
    const SpaceData& data, const DeBrangesPair& pair, std::uint64_t seed,
    IdentityTolerances tol = {});

// J_p - Theta(l) j_p Theta(w)^* = rho_w(l) FF(l) Gamma FF(w)^* at sampled
// interior pairs, plus the boundary specialization Theta j_p Theta^* = J_p.
std::vector<IdentityReport> check_J_identity(const ThetaMatrix& theta,
                                             const SpaceData& data,
                                             std::uint64_t seed, int samples = 20,
                                             IdentityTolerances tol = {});

// Displacement identities tying the Gram matrix to the realization rows:
// trig G - A^*GA = [C1* C2*] J_p [C1; C2]; Hamburger A^*G - GA =
// -2 pi i [C1* C2*] J_p [C1; C2].
IdentityReport check_displacement(const SpaceData& data, IdentityTolerances tol = {});

// Kernel inverse factorization K_w(l)^{-1} = K_w(w)^{-1} F(w) z_w (F(l) z_w)^{-1}.
IdentityReport check_kernel_inverse(const SpaceData& data, std::uint64_t seed,
                                    int samples = 10, IdentityTolerances tol = {});

// Realization rows of the 2p x m companion FF = [C1; C2](I - l A)^{-1}.
CMat realization_row_top(const SpaceData& data);     // C1
CMat realization_row_bottom(const SpaceData& data);  // C2

// Everything applicable to the instance's kind, in a fixed order.
std::vector<IdentityReport> run_identity_suite(const SpaceData& data,
                                               std::uint64_t seed,
                                               IdentityTolerances tol = {});

}  // namespace matmoment

#endif
