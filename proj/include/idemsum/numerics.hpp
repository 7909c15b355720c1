#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace idemsum {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kRelationTol = 1e-10;
inline constexpr double kRankTol = 1e-8;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClamp = 1e-10;

CMat adjoint(const CMat& m);

// Largest singular value.
double op_norm(const CMat& m);

std::vector<double> singular_values(const CMat& m);

// Principal square root of a Hermitian PSD matrix. Eigenvalues in
// [-kPsdClamp, 0) are treated as numerical noise and clamped to zero.
CMat hermitian_psd_sqrt(const CMat& m);

// Number of singular values above tol * max(sigma_max, 1 if all vanish).
std::size_t rank(const CMat& m, double tol);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMat vectors;                // columns are orthonormal eigenvectors
};

HermitianEigen eig_hermitian(const CMat& m);

bool is_hermitian(const CMat& m, double tol = kHermitianTol);
bool is_unitary(const CMat& m, double tol);

CMat identity(Eigen::Index n);
CMat kron(const CMat& a, const CMat& b);

// Block-diagonal assembly; blocks need not be square.
CMat block_diag(std::span<const CMat> blocks);

// Orthonormal basis of the null space of m. Singular values at or below
// tol * max(sigma_max, ref) count as zero; ref guards against a system that
// is pure rounding noise.
CMat null_space(const CMat& m, double tol, double ref = 0.0);

// Random test matrices. Gaussian entries; unitaries via QR with phase fix.
CMat random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols);
CMat random_unitary(std::mt19937_64& rng, Eigen::Index n);
CMat random_hermitian(std::mt19937_64& rng, Eigen::Index n);

// Random invertible matrix U * diag(s) * V with singular values spread
// log-uniformly over [1, cond].
CMat random_similarity(std::mt19937_64& rng, Eigen::Index n, double cond);

}  // namespace idemsum
