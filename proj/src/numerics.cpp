#include "idemsum/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "idemsum/error.hpp"

namespace idemsum {

CMat adjoint(const CMat& m) { return m.adjoint(); }

std::vector<double> singular_values(const CMat& m) {
  if (m.size() == 0) return {};
  Eigen::VectorXd s = Eigen::BDCSVD<CMat>(m).singularValues();
  if (!s.allFinite()) s = Eigen::JacobiSVD<CMat>(m).singularValues();
  return {s.data(), s.data() + s.size()};
}

double op_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  // Small matrices: Jacobi avoids the BDC overhead.
  if (m.rows() <= 16 && m.cols() <= 16) return Eigen::JacobiSVD<CMat>(m).singularValues()(0);
  const double s = Eigen::BDCSVD<CMat>(m).singularValues()(0);
  return std::isfinite(s) || !m.allFinite() ? s : Eigen::JacobiSVD<CMat>(m).singularValues()(0);
}

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_unitary(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - identity(m.rows())).cwiseAbs().maxCoeff() <= tol;
}

HermitianEigen eig_hermitian(const CMat& m) {
  if (!is_hermitian(m)) throw Error(Errc::NotHermitian, "eig_hermitian: input is not Hermitian");
  // Symmetrize so the solver sees exactly Hermitian input.
  const CMat h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  HermitianEigen out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  out.vectors = es.eigenvectors();
  return out;
}

CMat hermitian_psd_sqrt(const CMat& m) {
  if (!is_hermitian(m)) throw Error(Errc::NotHermitian, "hermitian_psd_sqrt: input is not Hermitian");
  const auto eig = eig_hermitian(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  Eigen::VectorXd root(static_cast<Eigen::Index>(eig.values.size()));
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values[i];
    if (v < -kPsdClamp * scale) {
      throw Error(Errc::NotPSD, "hermitian_psd_sqrt: eigenvalue " + std::to_string(v));
    }
    root(static_cast<Eigen::Index>(i)) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  const CMat& v = eig.vectors;
  CMat out = v * root.cast<cplx>().asDiagonal() * v.adjoint();
  return (out + out.adjoint()) / 2.0;
}

std::size_t rank(const CMat& m, double tol) {
  if (tol <= 0.0) throw Error(Errc::BadParameter, "rank: tol must be positive");
  const auto s = singular_values(m);
  if (s.empty()) return 0;
  const double ref = s.front() > 0.0 ? s.front() : 1.0;
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [&](double x) { return x > tol * ref; }));
}

CMat identity(Eigen::Index n) { return CMat::Identity(n, n); }

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat block_diag(std::span<const CMat> blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMat out = CMat::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

CMat null_space(const CMat& m, double tol, double ref_scale) {
  const Eigen::Index n = m.cols();
  if (n == 0) return CMat(0, 0);
  if (m.rows() == 0) return identity(n);
  auto kernel = [&](const auto& svd) {
    const auto& s = svd.singularValues();
    double ref = std::max(s.size() > 0 ? s(0) : 0.0, ref_scale);
    if (ref <= 0.0) ref = 1.0;
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tol * ref) ++r;
    return std::pair<CMat, double>{svd.matrixV().rightCols(n - r), tol * ref};
  };
  const auto [fast, cutoff] = kernel(Eigen::BDCSVD<CMat>(m, Eigen::ComputeFullV));
  // BDCSVD in Eigen 3.4.0 can pair singular values with the wrong right
  // singular vectors (or NaNs) when the matrix is rank deficient; verify and
  // fall back.
  const double slack = 10.0 * cutoff + 1e-13 * std::max(1.0, ref_scale);
  if (fast.cols() == 0 || (fast.allFinite() && op_norm(m * fast) <= slack)) return fast;
  return kernel(Eigen::JacobiSVD<CMat>(m, Eigen::ComputeFullV)).first;
}

CMat random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      out(i, j) = cplx(re, im);
    }
  return out;
}

CMat random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  const CMat z = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ() * identity(n);
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CMat random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  const CMat z = random_gaussian(rng, n, n);
  return (z + z.adjoint()) / 2.0;
}

CMat random_similarity(std::mt19937_64& rng, Eigen::Index n, double cond) {
  const CMat u = random_unitary(rng, n);
  const CMat v = random_unitary(rng, n);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = std::pow(cond, t(rng));
  if (n > 1) {
    s(0) = 1.0;
    s(n - 1) = cond;
  }
  return u * s.cast<cplx>().asDiagonal() * v;
}

}  // namespace idemsum
