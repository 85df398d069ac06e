#ifndef MATMOMENT_INSTANCES_HPP
#define MATMOMENT_INSTANCES_HPP

#include <cstdint>
#include <random>

#include "matmoment/blockmat.hpp"

namespace matmoment {

// Deterministic random source. Distributions are implemented by hand so the
// same seed yields the same bytes on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();                     // [0, 1)
  double uniform(double lo, double hi);
  double normal();                      // Box-Muller
  Cplx complex_normal();
  CMat gaussian(int rows, int cols);
  CMat hermitian(int n);
  CMat hermitian_psd(int n);            // B B^* + small ridge
  CMat unitary(int n);                  // QR of a Gaussian matrix
  CMat contraction(int n, double sigma_max);  // SVD clamp

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Moments of the positive trigonometric-polynomial weight
// W(t) = Q(e^{it}) Q(e^{it})^* + ridge I with random Q of degree n;
// h_k = sum_b C_{b+k} C_b^* exactly, so G is positive definite by
// construction and block Toeplitz.
MatrixMoments random_trig_instance(ProblemDims dims, std::uint64_t seed);

// Moments of a discrete measure sum_i w_i delta_{x_i} with 2n+2 spread
// nodes and positive definite weights, plus a Hankel-structured ridge; G is
// block Hankel and positive definite by construction.
MatrixMoments random_hamburger_instance(ProblemDims dims, std::uint64_t seed);

// Random Hermitian positive definite matrix rejected until it is neither
// block Toeplitz nor block Hankel.
CMat random_unstructured_pd(ProblemDims dims, std::uint64_t seed);

// Hermitian rank-one bump that keeps G positive definite but destroys the
// Toeplitz/Hankel layout.
CMat perturb_gram(const CMat& G, double magnitude, std::uint64_t seed);

}  // namespace matmoment

#endif
