#ifndef MATMOMENT_NUMERICS_HPP
#define MATMOMENT_NUMERICS_HPP

#include <functional>
#include <vector>

#include "matmoment/types.hpp"

namespace matmoment {

// Samples a matrix-valued function on the boundary: the argument is the
// angle t on the circle or the real coordinate mu on the line.
using BoundarySampler = std::function<CMat(double)>;

// Equispaced trapezoid nodes t_j = 2 pi j / M; exact for trigonometric
// polynomials of degree < M/2, spectrally accurate for functions analytic
// near the circle.
struct CircleQuadrature {
  int nodes = 4096;        // power of two
  int max_doublings = 4;
  double tol = 1e-11;
};

// Composite Gauss-Legendre (order 32 per panel) on (-pi/2, pi/2) after the
// substitution mu = tan t, with panel doubling until the last two estimates
// agree.
struct LineQuadrature {
  int panels = 8;
  int max_doublings = 9;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
};

struct QuadratureEstimate {
  CMat value;
  double last_diff = 0.0;  // difference between the final two refinements
  bool converged = false;
};

// Fourier coefficients (1/2pi) int e^{-ikt} f(t) dt for k = k_min..k_max.
// Throws Nonconvergence when the doubling budget runs out.
std::vector<CMat> fourier_coeffs(const BoundarySampler& f, int k_min, int k_max,
                                 CircleQuadrature cfg = {});

// int mu^k f(mu) dmu over the real line. The caller guarantees integrability;
// the estimate carries its own convergence flag.
QuadratureEstimate line_integral(const BoundarySampler& f, int moment_power,
                                 LineQuadrature cfg = {});

struct PoissonLogEstimate {
  double value = 0.0;
  double last_diff = 0.0;
  bool converged = false;
};

// Poisson-weighted integral of ln det f over the boundary, evaluated at the
// interior point omega. On the line, tail_order kappa subtracts
// kappa*ln(1+mu^2) from the integrand (restoring it analytically via
// Poisson[ln(1+mu^2)] = 2 ln|omega+i|), which removes the endpoint log
// singularity when det f decays like |mu|^{-2 kappa}.
PoissonLogEstimate poisson_log_integral(const BoundarySampler& f, Cplx omega,
                                        GeometryTag tag, int tail_order = 0);

// ln det of a Hermitian positive definite matrix; IntegrandSingular if not.
double log_det_hermitian(const CMat& M);

// 32-point Gauss-Legendre rule on [-1, 1].
const std::vector<double>& gauss_legendre_nodes();
const std::vector<double>& gauss_legendre_weights();

}  // namespace matmoment

#endif
