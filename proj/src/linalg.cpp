#include "prl/linalg.hpp"

#include <cmath>
#include <limits>

namespace prl::linalg {

namespace {

Eigen::Index count_above(const Eigen::VectorXd& sv, double tol) {
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cut = tol * sv(0);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return r;
}

}  // namespace

Eigen::Index numerical_rank(const Matrix& a, double tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return count_above(svd.singularValues(), tol);
}

Matrix orthonormal_basis(const Matrix& a, double tol) {
    if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
    const Eigen::Index r = count_above(svd.singularValues(), tol);
    return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& a, double tol) {
    const Eigen::Index n = a.cols();
    if (a.rows() == 0 || n == 0) return Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const Eigen::Index r = count_above(svd.singularValues(), tol);
    return svd.matrixV().rightCols(n - r);
}

Matrix projector(const Matrix& basis) { return basis * basis.adjoint(); }

Matrix subspace_sum(const Matrix& a, const Matrix& b, double tol) {
    Matrix stacked(a.rows(), a.cols() + b.cols());
    stacked << a, b;
    return orthonormal_basis(stacked, tol);
}

Matrix subspace_intersection(const Matrix& a, const Matrix& b, double tol) {
    if (a.cols() == 0 || b.cols() == 0) return Matrix(a.rows(), 0);
    Matrix stacked(a.rows(), a.cols() + b.cols());
    stacked << a, -b;
    const Matrix kernel = null_space(stacked, tol);
    if (kernel.cols() == 0) return Matrix(a.rows(), 0);
    return orthonormal_basis(a * kernel.topRows(a.cols()), tol);
}

Eigen::Index intersection_dim(const Matrix& a, const Matrix& b, double tol) {
    if (a.cols() == 0 || b.cols() == 0) return 0;
    Matrix stacked(a.rows(), a.cols() + b.cols());
    stacked << a, b;
    return a.cols() + b.cols() - numerical_rank(stacked, tol);
}

double inclusion_residual(const Matrix& big, const Matrix& small) {
    if (small.cols() == 0) return 0.0;
    const Matrix rest = small - big * (big.adjoint() * small);
    return spectral_norm(rest);
}

bool contains(const Matrix& big, const Matrix& small, double tol) {
    if (small.cols() == 0) return true;
    if (big.cols() < small.cols()) return false;
    return intersection_dim(big, small, tol) == small.cols();
}

bool same_subspace(const Matrix& a, const Matrix& b, double tol) {
    return a.cols() == b.cols() && contains(a, b, tol);
}

double spectral_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

double condition_number(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 1.0;
    const double lo = sv(sv.size() - 1);
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / lo;
}

Matrix hermitian_exp(const Matrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(hermitian_part(h));
    const Eigen::VectorXd scaled = (t * eig.eigenvalues().array()).exp();
    return eig.eigenvectors() * scaled.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    const Matrix g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

Matrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
    return hermitian_part(random_gaussian(n, n, rng));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over the combined key
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace prl::linalg
