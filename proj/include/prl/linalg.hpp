#pragma once

// Numerical subspace helpers shared by linrep and the moment solver.
// Subspaces are represented by matrices with orthonormal columns.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace prl::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Rank with singular values counted above tol * sigma_max.
Eigen::Index numerical_rank(const Matrix& a, double tol);

/// Orthonormal basis of the column span (rank decided as above).
Matrix orthonormal_basis(const Matrix& a, double tol);

/// Orthonormal basis of the null space of a (right singular vectors with
/// singular value <= tol * sigma_max; everything when a == 0).
Matrix null_space(const Matrix& a, double tol);

Matrix projector(const Matrix& basis);

Matrix subspace_sum(const Matrix& a, const Matrix& b, double tol);
Matrix subspace_intersection(const Matrix& a, const Matrix& b, double tol);
Eigen::Index intersection_dim(const Matrix& a, const Matrix& b, double tol);

/// span(small) is contained in span(big), at tolerance.
bool contains(const Matrix& big, const Matrix& small, double tol);
/// Spectral norm of (I - P_big) * small for orthonormal inputs.
double inclusion_residual(const Matrix& big, const Matrix& small);
bool same_subspace(const Matrix& a, const Matrix& b, double tol);

double spectral_norm(const Matrix& a);
double condition_number(const Matrix& a);

/// exp(t * h) for Hermitian h.
Matrix hermitian_exp(const Matrix& h, double t);
Matrix hermitian_part(const Matrix& a);

/// Entries with independent standard complex Gaussian law.
Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
/// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng);
Matrix random_hermitian(Eigen::Index n, std::mt19937_64& rng);

/// Independent stream for sub-task `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace prl::linalg
