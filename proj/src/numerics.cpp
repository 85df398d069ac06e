#include "matmoment/numerics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace matmoment {

namespace {

constexpr int kGaussOrder = 32;

// Legendre roots by Newton from the Chebyshev-like initial guesses.
void build_gauss_legendre(std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(kGaussOrder);
  weights.resize(kGaussOrder);
  const int n = kGaussOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes() {
  static const std::vector<double> nodes = [] {
    std::vector<double> n, w;
    build_gauss_legendre(n, w);
    return n;
  }();
  return nodes;
}

const std::vector<double>& gauss_legendre_weights() {
  static const std::vector<double> weights = [] {
    std::vector<double> n, w;
    build_gauss_legendre(n, w);
    return w;
  }();
  return weights;
}

double log_det_hermitian(const CMat& M) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (M + M.adjoint()));
  if (es.info() != Eigen::Success)
    throw IntegrandSingular("eigendecomposition failed inside log-det");
  double acc = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (!(v > 0.0) || !std::isfinite(v))
      throw IntegrandSingular("log-det of a non positive definite matrix");
    acc += std::log(v);
  }
  return acc;
}

namespace {

// One pass of the trapezoid rule for all requested Fourier indices.
std::vector<CMat> fourier_pass(const BoundarySampler& f, int k_min, int k_max, int M) {
  std::vector<CMat> out;
  const int count = k_max - k_min + 1;
  bool init = false;
  for (int j = 0; j < M; ++j) {
    const double t = 2.0 * kPi * j / M;
    const CMat val = f(t);
    if (!init) {
      out.assign(count, CMat::Zero(val.rows(), val.cols()));
      init = true;
    }
    for (int k = k_min; k <= k_max; ++k)
      out[k - k_min] += std::exp(-kI * static_cast<double>(k) * t) * val;
  }
  for (CMat& m : out) m /= static_cast<double>(M);
  return out;
}

}  // namespace

std::vector<CMat> fourier_coeffs(const BoundarySampler& f, int k_min, int k_max,
                                 CircleQuadrature cfg) {
  int M = cfg.nodes;
  std::vector<CMat> prev = fourier_pass(f, k_min, k_max, M);
  for (int d = 0; d < cfg.max_doublings; ++d) {
    M *= 2;
    std::vector<CMat> next = fourier_pass(f, k_min, k_max, M);
    double diff = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i)
      diff = std::max(diff, (next[i] - prev[i]).norm());
    if (diff < cfg.tol) return next;
    prev = std::move(next);
  }
  throw Nonconvergence("fourier coefficients did not settle under node doubling");
}

namespace {

// Composite Gauss-Legendre over [lo, hi] split into `panels` equal pieces.
CMat gauss_panels(const std::function<CMat(double)>& g, double lo, double hi, int panels) {
  const auto& xs = gauss_legendre_nodes();
  const auto& ws = gauss_legendre_weights();
  CMat acc;
  const double h = (hi - lo) / panels;
  bool init = false;
  for (int q = 0; q < panels; ++q) {
    const double a = lo + q * h;
    for (int i = 0; i < kGaussOrder; ++i) {
      const double x = a + 0.5 * h * (xs[i] + 1.0);
      const CMat val = ws[i] * g(x);
      if (!init) {
        acc = CMat::Zero(val.rows(), val.cols());
        init = true;
      }
      acc += val;
    }
  }
  return (0.5 * h) * acc;
}

}  // namespace

QuadratureEstimate line_integral(const BoundarySampler& f, int moment_power,
                                 LineQuadrature cfg) {
  // mu = tan t maps (-pi/2, pi/2) onto the line; dmu = sec^2 t dt. Gauss
  // nodes stay strictly interior, so tan never overflows the endpoints.
  auto g = [&](double t) -> CMat {
    const double mu = std::tan(t);
    const double sec2 = 1.0 / (std::cos(t) * std::cos(t));
    return std::pow(mu, moment_power) * sec2 * f(mu);
  };
  int panels = cfg.panels;
  CMat prev = gauss_panels(g, -0.5 * kPi, 0.5 * kPi, panels);
  QuadratureEstimate est;
  for (int d = 0; d < cfg.max_doublings; ++d) {
    panels *= 2;
    CMat next = gauss_panels(g, -0.5 * kPi, 0.5 * kPi, panels);
    est.last_diff = (next - prev).norm();
    prev = std::move(next);
    if (est.last_diff < cfg.abs_tol + cfg.rel_tol * prev.norm()) {
      est.value = prev;
      est.converged = true;
      return est;
    }
  }
  est.value = prev;
  est.converged = false;
  return est;
}

PoissonLogEstimate poisson_log_integral(const BoundarySampler& f, Cplx omega,
                                        GeometryTag tag, int tail_order) {
  PoissonLogEstimate est;
  if (!interior_point(omega, tag))
    throw OutOfRegion("poisson integral requires an interior evaluation point");

  if (tag == GeometryTag::Disc) {
    const double r2 = std::norm(omega);
    auto g = [&](double t) {
      const Cplx z = std::exp(kI * t);
      const double weight = (1.0 - r2) / std::norm(z - omega);
      return weight * log_det_hermitian(f(t));
    };
    int M = 256;
    auto pass = [&](int nodes) {
      double acc = 0.0;
      for (int j = 0; j < nodes; ++j) acc += g(2.0 * kPi * j / nodes);
      return acc / nodes;
    };
    double prev = pass(M);
    for (int d = 0; d < 6; ++d) {
      M *= 2;
      double next = pass(M);
      est.last_diff = std::abs(next - prev);
      prev = next;
      if (est.last_diff < 1e-11) {
        est.value = prev;
        est.converged = true;
        return est;
      }
    }
    est.value = prev;
    return est;
  }

  // Half-plane: with mu = a + b tan(theta) the Poisson weight becomes the
  // uniform measure dtheta/pi. The tail_order subtraction keeps the
  // integrand smooth through the endpoints.
  const double a = omega.real(), b = omega.imag();
  auto g = [&](double theta) -> CMat {
    const double mu = a + b * std::tan(theta);
    double v = log_det_hermitian(f(mu));
    if (tail_order > 0) v += tail_order * std::log1p(mu * mu);
    CMat out(1, 1);
    out(0, 0) = v;
    return out;
  };
  int panels = 8;
  CMat prev = gauss_panels(g, -0.5 * kPi, 0.5 * kPi, panels);
  bool converged = false;
  for (int d = 0; d < 8; ++d) {
    panels *= 2;
    CMat next = gauss_panels(g, -0.5 * kPi, 0.5 * kPi, panels);
    est.last_diff = (next - prev).norm();
    prev = std::move(next);
    if (est.last_diff < 1e-11) {
      converged = true;
      break;
    }
  }
  est.value = prev(0, 0).real() / kPi;
  if (tail_order > 0) est.value -= 2.0 * tail_order * std::log(std::abs(omega + kI));
  est.converged = converged;
  return est;
}

}  // namespace matmoment
