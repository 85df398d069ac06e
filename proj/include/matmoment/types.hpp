#ifndef MATMOMENT_TYPES_HPP
#define MATMOMENT_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace matmoment {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Cplx kI{0.0, 1.0};

// Which truncated moment problem an instance belongs to.
enum class MomentKind { Trigonometric, Hamburger };

// Underlying region: open unit disc (boundary = circle) or open upper
// half-plane (boundary = real line).
enum class GeometryTag { Disc, HalfPlane };

inline GeometryTag geometry_of(MomentKind k) {
  return k == MomentKind::Trigonometric ? GeometryTag::Disc : GeometryTag::HalfPlane;
}

inline const char* to_string(MomentKind k) {
  return k == MomentKind::Trigonometric ? "trigonometric" : "hamburger";
}
inline const char* to_string(GeometryTag t) {
  return t == GeometryTag::Disc ? "disc" : "half-plane";
}

// Block size p, order n, total dimension m = (n+1)p.
struct ProblemDims {
  int p = 1;
  int n = 1;
  int m() const { return (n + 1) * p; }
  bool operator==(const ProblemDims&) const = default;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error { using Error::Error; };

struct NotPositiveDefinite : Error {
  double smallest_pivot;
  explicit NotPositiveDefinite(double pivot)
      : Error("gram matrix is not positive definite (smallest pivot " +
              std::to_string(pivot) + ")"),
        smallest_pivot(pivot) {}
};

struct NotToeplitz : Error { using Error::Error; };
struct NotHankel : Error { using Error::Error; };
struct AlphaOutOfRegion : Error { using Error::Error; };
struct EvalAtZero : Error { using Error::Error; };
struct KindMismatch : Error { using Error::Error; };
struct SingularAtPoint : Error { using Error::Error; };
struct OutOfRegion : Error { using Error::Error; };
struct SingularDenominator : Error { using Error::Error; };
struct BoundaryDegenerate : Error { using Error::Error; };
struct NotContractive : Error { using Error::Error; };
struct RestrictedClassViolation : Error { using Error::Error; };
struct IntegrandSingular : Error { using Error::Error; };
struct Nonconvergence : Error { using Error::Error; };
struct InconsistentInputs : Error { using Error::Error; };

// Relative Frobenius residual used by every identity check; identities mix
// scales (2*pi factors), so the denominator is clamped at 1.
inline double rel_residual(const CMat& lhs, const CMat& rhs) {
  double scale = std::max({1.0, lhs.norm(), rhs.norm()});
  return (lhs - rhs).norm() / scale;
}

inline bool interior_point(Cplx z, GeometryTag tag) {
  return tag == GeometryTag::Disc ? std::abs(z) < 1.0 : z.imag() > 0.0;
}

}  // namespace matmoment

#endif
