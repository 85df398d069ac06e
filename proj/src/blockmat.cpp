#include "matmoment/blockmat.hpp"

#include <Eigen/Eigenvalues>

namespace matmoment {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw ShapeMismatch(msg);
}

double hermitian_defect(const CMat& M) {
  double scale = std::max(1.0, M.norm());
  return (M - M.adjoint()).norm() / scale;
}

}  // namespace

MatrixMoments MatrixMoments::trigonometric(ProblemDims d, std::vector<CMat> h) {
  MatrixMoments mm{MomentKind::Trigonometric, d, std::move(h)};
  mm.validate();
  return mm;
}

MatrixMoments MatrixMoments::hamburger(ProblemDims d, std::vector<CMat> h) {
  MatrixMoments mm{MomentKind::Hamburger, d, std::move(h)};
  mm.validate();
  return mm;
}

void MatrixMoments::validate() const {
  require(dims.p >= 1 && dims.n >= 0, "block size and order must be positive");
  const std::size_t expected =
      kind == MomentKind::Trigonometric ? dims.n + 1 : 2 * dims.n + 1;
  require(blocks.size() == expected, "wrong number of moment blocks");
  for (const CMat& b : blocks)
    require(b.rows() == dims.p && b.cols() == dims.p, "moment block has wrong shape");
  constexpr double tol = 1e-10;
  if (kind == MomentKind::Trigonometric) {
    if (hermitian_defect(blocks[0]) > tol)
      throw ShapeMismatch("trigonometric h_0 must be Hermitian");
  } else {
    for (const CMat& b : blocks)
      if (hermitian_defect(b) > tol)
        throw ShapeMismatch("hamburger moments must be Hermitian");
  }
}

CMat MatrixMoments::h(int k) const {
  if (kind == MomentKind::Trigonometric) {
    require(k >= -dims.n && k <= dims.n, "trigonometric moment index out of range");
    if (k >= 0) return blocks[k];
    return blocks[-k].adjoint();
  }
  require(k >= 0 && k <= 2 * dims.n, "hamburger moment index out of range");
  return blocks[k];
}

namespace {

GramPair factor_and_invert(ProblemDims dims, CMat G) {
  const int m = dims.m();
  // Symmetrize before factoring so roundoff in the assembly cannot leak
  // a non-Hermitian part into the pivots.
  G = (0.5 * (G + G.adjoint())).eval();

  Eigen::LDLT<CMat> ldlt(G);
  const double scale = std::max(1.0, G.norm());
  const double threshold = 1e-12 * scale;
  double min_pivot = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) min_pivot = std::min(min_pivot, ldlt.vectorD()(i).real());
  if (!(min_pivot > threshold) || ldlt.info() != Eigen::Success)
    throw NotPositiveDefinite(min_pivot);

  CMat Gamma = ldlt.solve(CMat::Identity(m, m));
  Gamma = (0.5 * (Gamma + Gamma.adjoint())).eval();
  return GramPair{dims, std::move(G), std::move(Gamma), min_pivot};
}

}  // namespace

GramPair build_gram(const MatrixMoments& moments) {
  moments.validate();
  const ProblemDims dims = moments.dims;
  const int p = dims.p, m = dims.m();
  CMat G(m, m);
  for (int i = 0; i <= dims.n; ++i)
    for (int j = 0; j <= dims.n; ++j) {
      const int k = moments.kind == MomentKind::Trigonometric ? i - j : i + j;
      G.block(i * p, j * p, p, p) = moments.h(k);
    }
  return factor_and_invert(dims, std::move(G));
}

GramPair gram_from_matrix(ProblemDims dims, const CMat& G) {
  require(G.rows() == dims.m() && G.cols() == dims.m(), "gram matrix has wrong shape");
  if (hermitian_defect(G) > 1e-10) throw ShapeMismatch("gram matrix must be Hermitian");
  return factor_and_invert(dims, G);
}

ShiftStructure::ShiftStructure(ProblemDims d) : dims(d), A(CMat::Zero(d.m(), d.m())) {
  for (int j = 0; j + 1 <= d.n; ++j)
    A.block(j * d.p, (j + 1) * d.p, d.p, d.p) = CMat::Identity(d.p, d.p);
}

CMat ShiftStructure::e(int j) const {
  CMat v = CMat::Zero(dims.m(), dims.p);
  v.block(j * dims.p, 0, dims.p, dims.p) = CMat::Identity(dims.p, dims.p);
  return v;
}

CMat monomial_row(ProblemDims dims, Cplx lambda) {
  CMat F(dims.p, dims.m());
  Cplx power = 1.0;
  for (int k = 0; k <= dims.n; ++k) {
    F.block(0, k * dims.p, dims.p, dims.p) = power * CMat::Identity(dims.p, dims.p);
    power *= lambda;
  }
  return F;
}

CMat shifted_monomial_row(ProblemDims dims, Cplx lambda) {
  return lambda * monomial_row(dims, lambda);
}

bool is_block_toeplitz(ProblemDims dims, const CMat& G, double tol) {
  const int p = dims.p;
  for (int i = 0; i < dims.n; ++i)
    for (int j = 0; j < dims.n; ++j)
      if ((G.block(i * p, j * p, p, p) - G.block((i + 1) * p, (j + 1) * p, p, p)).norm() >
          tol * std::max(1.0, G.norm()))
        return false;
  return true;
}

bool is_block_hankel(ProblemDims dims, const CMat& G, double tol) {
  const int p = dims.p;
  for (int i = 0; i < dims.n; ++i)
    for (int j = 1; j <= dims.n; ++j)
      if ((G.block(i * p, j * p, p, p) - G.block((i + 1) * p, (j - 1) * p, p, p)).norm() >
          tol * std::max(1.0, G.norm()))
        return false;
  return true;
}

namespace {

double trailing_block_norm(ProblemDims dims, const CMat& M) {
  const int p = dims.p, np = dims.n * dims.p;
  if (np == 0) return 0.0;
  return M.block(p, p, np, np).norm();
}

}  // namespace

double toeplitz_structure_residual(ProblemDims dims, const CMat& G) {
  ShiftStructure s(dims);
  CMat D = G - s.A.adjoint() * G * s.A;
  return trailing_block_norm(dims, D) / std::max(1.0, G.norm());
}

double hankel_structure_residual(ProblemDims dims, const CMat& G) {
  ShiftStructure s(dims);
  CMat D = G * s.A - s.A.adjoint() * G;
  return trailing_block_norm(dims, D) / std::max(1.0, G.norm());
}

namespace {

CMat hermitian_power(const CMat& M, double exponent) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (M + M.adjoint()));
  if (es.info() != Eigen::Success)
    throw Error("hermitian eigendecomposition failed");
  const double floor = 1e-14 * std::max(1.0, std::abs(es.eigenvalues().sum()));
  Eigen::VectorXd vals = es.eigenvalues();
  for (int i = 0; i < vals.size(); ++i)
    vals(i) = std::pow(std::max(vals(i), floor), exponent);
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMat hermitian_inv_sqrt(const CMat& M) { return hermitian_power(M, -0.5); }
CMat hermitian_sqrt(const CMat& M) { return hermitian_power(M, 0.5); }

}  // namespace matmoment
