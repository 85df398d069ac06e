#include "matmoment/instances.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace matmoment {

double Rng::uniform() {
  return (gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 <= 1e-300) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

Cplx Rng::complex_normal() {
  return Cplx(normal(), normal()) / std::sqrt(2.0);
}

CMat Rng::gaussian(int rows, int cols) {
  CMat M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = complex_normal();
  return M;
}

CMat Rng::hermitian(int n) {
  CMat M = gaussian(n, n);
  return 0.5 * (M + M.adjoint());
}

CMat Rng::hermitian_psd(int n) {
  CMat B = gaussian(n, n);
  return B * B.adjoint() + 0.05 * CMat::Identity(n, n);
}

CMat Rng::unitary(int n) {
  Eigen::HouseholderQR<CMat> qr(gaussian(n, n));
  CMat Q = qr.householderQ() * CMat::Identity(n, n);
  // Fix the phases so the factorization is unique given the input.
  CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    Cplx d = R(j, j);
    if (std::abs(d) > 0) Q.col(j) *= d / std::abs(d);
  }
  return Q;
}

CMat Rng::contraction(int n, double sigma_max) {
  CMat M = gaussian(n, n);
  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s = svd.singularValues();
  const double top = s.maxCoeff();
  if (top > 0) s *= sigma_max / top;
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
}

MatrixMoments random_trig_instance(ProblemDims dims, std::uint64_t seed) {
  Rng rng(seed ^ 0x746f65706cULL);
  const int p = dims.p, n = dims.n;
  std::vector<CMat> C(n + 1);
  for (int j = 0; j <= n; ++j) C[j] = rng.gaussian(p, p);
  std::vector<CMat> h(n + 1, CMat::Zero(p, p));
  for (int k = 0; k <= n; ++k)
    for (int b = 0; b + k <= n; ++b) h[k] += C[b + k] * C[b].adjoint();
  h[0] += 0.05 * CMat::Identity(p, p);
  h[0] = (0.5 * (h[0] + h[0].adjoint())).eval();
  return MatrixMoments::trigonometric(dims, std::move(h));
}

MatrixMoments random_hamburger_instance(ProblemDims dims, std::uint64_t seed) {
  Rng rng(seed ^ 0x68616e6bULL);
  const int p = dims.p, n = dims.n;
  const int node_count = 2 * n + 2;
  std::vector<double> nodes(node_count);
  for (int i = 0; i < node_count; ++i) {
    // Chebyshev-spread nodes with jitter keep the Hankel matrix tame.
    const double base = std::cos(kPi * (i + 0.5) / node_count);
    nodes[i] = 1.4 * base + 0.08 * rng.uniform(-1.0, 1.0);
  }
  std::vector<CMat> h(2 * n + 1, CMat::Zero(p, p));
  for (int i = 0; i < node_count; ++i) {
    CMat B = rng.gaussian(p, p);
    CMat w = B * B.adjoint() + 0.1 * CMat::Identity(p, p);
    double power = 1.0;
    for (int k = 0; k <= 2 * n; ++k) {
      h[k] += power * w;
      power *= nodes[i];
    }
  }
  // Hankel-structured ridge: moments of tiny unit masses at fixed points.
  const double eps = 1e-6;
  for (double y : {-1.0, -0.35, 0.35, 1.0}) {
    double power = 1.0;
    for (int k = 0; k <= 2 * n; ++k) {
      h[k] += (eps * power) * CMat::Identity(p, p);
      power *= y;
    }
  }
  for (CMat& b : h) b = (0.5 * (b + b.adjoint())).eval();
  return MatrixMoments::hamburger(dims, std::move(h));
}

CMat random_unstructured_pd(ProblemDims dims, std::uint64_t seed) {
  Rng rng(seed ^ 0x756e737472ULL);
  const int m = dims.m();
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMat B = rng.gaussian(m, m);
    CMat G = B * B.adjoint() + 0.1 * CMat::Identity(m, m);
    G = (0.5 * (G + G.adjoint())).eval();
    if (!is_block_toeplitz(dims, G, 1e-6) && !is_block_hankel(dims, G, 1e-6)) return G;
  }
  throw Error("failed to draw an unstructured positive definite matrix");
}

CMat perturb_gram(const CMat& G, double magnitude, std::uint64_t seed) {
  Rng rng(seed ^ 0x7065727475ULL);
  const int m = static_cast<int>(G.rows());
  CMat v = rng.gaussian(m, 1);
  v /= v.norm();
  CMat bump = magnitude * G.norm() * (v * v.adjoint());
  return (0.5 * (G + bump + (G + bump).adjoint())).eval();
}

}  // namespace matmoment
