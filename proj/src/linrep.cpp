#include "prl/linrep.hpp"

#include "prl/errors.hpp"

#include <algorithm>
#include <numeric>

namespace prl {

using linalg::Complex;
using linalg::Matrix;

DimVector SubspaceRep::dim_vector() const {
    DimVector d;
    d.root = ambient_;
    d.elements.reserve(bases_.size());
    for (const auto& b : bases_) d.elements.push_back(b.cols());
    return d;
}

SubspaceRep make_rep(Poset poset, Eigen::Index ambient_dim, std::vector<Matrix> spans, double tol) {
    if (ambient_dim < 0) throw DimensionMismatch("negative ambient dimension");
    if (spans.size() != poset.size()) {
        throw DimensionMismatch("expected " + std::to_string(poset.size()) + " spanning matrices, got " +
                                std::to_string(spans.size()));
    }
    SubspaceRep rep;
    rep.bases_.reserve(spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i) {
        auto& s = spans[i];
        if (s.cols() == 0) s.resize(ambient_dim, 0);
        if (s.rows() != ambient_dim) {
            throw DimensionMismatch("spanning matrix of '" + poset.element(i) + "' has " + std::to_string(s.rows()) +
                                    " rows, ambient dimension is " + std::to_string(ambient_dim));
        }
        if (s.cols() > ambient_dim || linalg::numerical_rank(s, tol) != s.cols()) {
            throw RankDeficient("spanning matrix of '" + poset.element(i) + "' does not have full column rank");
        }
        rep.bases_.push_back(linalg::orthonormal_basis(s, tol));
    }
    for (std::size_t i = 0; i < poset.size(); ++i) {
        for (std::size_t j = 0; j < poset.size(); ++j) {
            if (poset.less(i, j) && !linalg::contains(rep.bases_[j], rep.bases_[i], tol)) {
                throw NestingViolation("'" + poset.element(i) + "' < '" + poset.element(j) +
                                       "' but its subspace is not contained in the other");
            }
        }
    }
    rep.poset_ = std::move(poset);
    rep.ambient_ = ambient_dim;
    rep.spans_ = std::move(spans);
    rep.tol_ = tol;
    return rep;
}

SubspaceRep zero_rep(const Poset& poset) {
    return make_rep(poset, 0, std::vector<Matrix>(poset.size(), Matrix(0, 0)));
}

SubspaceRep transform(const SubspaceRep& rep, const Matrix& g) {
    if (g.rows() != rep.ambient_dim() || g.cols() != rep.ambient_dim()) {
        throw DimensionMismatch("transformation has the wrong size");
    }
    std::vector<Matrix> spans;
    spans.reserve(rep.bases().size());
    for (const auto& s : rep.spans()) spans.push_back(g * s);
    return make_rep(rep.poset(), rep.ambient_dim(), std::move(spans), rep.tolerance());
}

SubspaceRep direct_sum(const SubspaceRep& a, const SubspaceRep& b) {
    if (a.poset().elements() != b.poset().elements() || !(a.poset() == b.poset())) {
        throw PosetMismatch("direct sum of representations of different posets");
    }
    const Eigen::Index da = a.ambient_dim();
    const Eigen::Index db = b.ambient_dim();
    std::vector<Matrix> spans;
    for (std::size_t i = 0; i < a.poset().size(); ++i) {
        const Matrix& x = a.basis(i);
        const Matrix& y = b.basis(i);
        Matrix s = Matrix::Zero(da + db, x.cols() + y.cols());
        s.topLeftCorner(da, x.cols()) = x;
        s.bottomRightCorner(db, y.cols()) = y;
        spans.push_back(std::move(s));
    }
    return make_rep(a.poset(), da + db, std::move(spans), std::max(a.tolerance(), b.tolerance()));
}

bool same_subspaces(const SubspaceRep& a, const SubspaceRep& b, double tol) {
    if (a.ambient_dim() != b.ambient_dim() || a.bases().size() != b.bases().size()) return false;
    for (std::size_t i = 0; i < a.bases().size(); ++i) {
        if (!linalg::same_subspace(a.basis(i), b.basis(i), tol)) return false;
    }
    return true;
}

std::vector<Matrix> endomorphism_algebra(const SubspaceRep& rep) {
    const Eigen::Index n = rep.ambient_dim();
    if (n == 0) return {};
    // vec((I - P_i) f Q_i) = (Q_i^T kron (I - P_i)) vec(f)
    Eigen::Index rows = 0;
    for (const auto& q : rep.bases()) rows += n * q.cols();
    Matrix system = Matrix::Zero(rows, n * n);
    Eigen::Index offset = 0;
    const Matrix id = Matrix::Identity(n, n);
    for (const auto& q : rep.bases()) {
        const Matrix comp = id - linalg::projector(q);
        for (Eigen::Index c = 0; c < q.cols(); ++c) {
            for (Eigen::Index k = 0; k < n; ++k) {
                system.block(offset + c * n, k * n, n, n) = q(k, c) * comp;
            }
        }
        offset += n * q.cols();
    }
    // bases are orthonormal, so the system has unit scale
    const Matrix kernel = system.norm() <= rep.tolerance() ? Matrix::Identity(n * n, n * n)
                                                           : linalg::null_space(system, rep.tolerance());
    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(kernel.cols()));
    for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
        basis.push_back(Eigen::Map<const Matrix>(kernel.col(k).data(), n, n));
    }
    return basis;
}

namespace {

struct Cluster {
    Complex value;
    Eigen::Index multiplicity;
};

std::vector<Cluster> cluster_eigenvalues(const Eigen::VectorXcd& ev) {
    double scale = 1.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) scale = std::max(scale, std::abs(ev(k)));
    const double gap = 1e-6 * scale;
    std::vector<Complex> values(ev.data(), ev.data() + ev.size());
    std::vector<int> label(values.size(), -1);
    int next = 0;
    // single linkage
    for (std::size_t s = 0; s < values.size(); ++s) {
        if (label[s] >= 0) continue;
        label[s] = next;
        std::vector<std::size_t> frontier{s};
        while (!frontier.empty()) {
            const std::size_t cur = frontier.back();
            frontier.pop_back();
            for (std::size_t t = 0; t < values.size(); ++t) {
                if (label[t] < 0 && std::abs(values[t] - values[cur]) < gap) {
                    label[t] = next;
                    frontier.push_back(t);
                }
            }
        }
        ++next;
    }
    std::vector<Cluster> out(static_cast<std::size_t>(next), Cluster{Complex(0), 0});
    for (std::size_t s = 0; s < values.size(); ++s) {
        auto& c = out[static_cast<std::size_t>(label[s])];
        c.value += values[s];
        ++c.multiplicity;
    }
    for (auto& c : out) c.value /= static_cast<double>(c.multiplicity);
    return out;
}

// Splits rep along the generalized eigenspaces of one random endomorphism.
// Returns an empty vector when no splitting happens.
std::vector<SubspaceRep> split_once(const SubspaceRep& rep, const std::vector<Matrix>& end, std::uint64_t seed) {
    const Eigen::Index n = rep.ambient_dim();
    std::mt19937_64 rng(seed);
    const Matrix coeff = linalg::random_gaussian(static_cast<Eigen::Index>(end.size()), 1, rng);
    Matrix f = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < end.size(); ++k) f += coeff(static_cast<Eigen::Index>(k), 0) * end[k];

    Eigen::ComplexEigenSolver<Matrix> eig(f, false);
    const auto clusters = cluster_eigenvalues(eig.eigenvalues());
    if (clusters.size() < 2) return {};

    Matrix blocks(n, n);
    Eigen::Index col = 0;
    const Matrix id = Matrix::Identity(n, n);
    for (const auto& c : clusters) {
        Matrix power = id;
        const Matrix shifted = f - c.value * id;
        for (Eigen::Index k = 0; k < c.multiplicity; ++k) power = power * shifted;
        Eigen::JacobiSVD<Matrix> svd(power, Eigen::ComputeFullV);
        blocks.middleCols(col, c.multiplicity) = svd.matrixV().rightCols(c.multiplicity);
        col += c.multiplicity;
    }
    if (linalg::condition_number(blocks) > 1e10) return {};
    const Matrix coords = blocks.partialPivLu().inverse();

    std::vector<SubspaceRep> parts;
    Eigen::Index row = 0;
    std::vector<Eigen::Index> total(rep.bases().size(), 0);
    for (const auto& c : clusters) {
        std::vector<Matrix> spans;
        for (std::size_t i = 0; i < rep.bases().size(); ++i) {
            const Matrix local = (coords * rep.basis(i)).middleRows(row, c.multiplicity);
            if (local.norm() <= rep.tolerance() * coords.norm()) {
                spans.emplace_back(c.multiplicity, 0);
            } else {
                spans.push_back(linalg::orthonormal_basis(local, rep.tolerance()));
            }
            total[i] += spans.back().cols();
        }
        try {
            parts.push_back(make_rep(rep.poset(), c.multiplicity, std::move(spans), rep.tolerance()));
        } catch (const Error&) {
            return {};
        }
        row += c.multiplicity;
    }
    for (std::size_t i = 0; i < total.size(); ++i) {
        if (total[i] != rep.dim(i)) return {};
    }
    return parts;
}

void decompose_into(const SubspaceRep& rep, std::uint64_t seed, std::vector<SubspaceRep>& out) {
    if (rep.ambient_dim() <= 1) {
        out.push_back(rep);
        return;
    }
    const auto end = endomorphism_algebra(rep);
    if (end.size() <= 1) {
        out.push_back(rep);
        return;
    }
    // A generic element of a non-local algebra has at least two eigenvalues;
    // a second draw guards against an unlucky first one.
    std::vector<SubspaceRep> parts;
    for (std::uint64_t attempt = 0; attempt < 2 && parts.empty(); ++attempt) {
        parts = split_once(rep, end, linalg::derive_seed(seed, attempt));
    }
    if (parts.empty()) {
        out.push_back(rep);
        return;
    }
    for (std::size_t k = 0; k < parts.size(); ++k) decompose_into(parts[k], linalg::derive_seed(seed, 100 + k), out);
}

}  // namespace

std::vector<SubspaceRep> decompose(const SubspaceRep& rep, std::uint64_t seed) {
    std::vector<SubspaceRep> out;
    if (rep.ambient_dim() == 0) return out;
    decompose_into(rep, seed, out);
    return out;
}

Weight::Weight(Rational chi0, std::vector<Rational> chi) : chi0_(std::move(chi0)), chi_(std::move(chi)) {
    if (chi0_ <= 0) throw InvalidWeight("chi0 must be positive");
    for (const auto& c : chi_) {
        if (c <= 0) throw InvalidWeight("weights must be positive");
    }
}

std::vector<double> Weight::normalized() const {
    std::vector<double> out;
    out.reserve(chi_.size());
    for (const auto& c : chi_) out.push_back(to_double(c / chi0_));
    return out;
}

std::vector<Rational> Weight::theta() const {
    std::vector<Rational> out{chi0_};
    for (const auto& c : chi_) out.push_back(-c);
    return out;
}

Rational Weight::slope(const DimVector& d) const {
    if (d.elements.size() != chi_.size()) throw DimensionMismatch("weight and dimension vector differ in length");
    if (d.root == 0) return Rational(0);
    Rational acc(0);
    for (std::size_t i = 0; i < chi_.size(); ++i) acc += chi_[i] * d.elements[i];
    return acc / d.root;
}

bool Weight::trace_identity(const DimVector& d) const {
    if (d.elements.size() != chi_.size()) throw DimensionMismatch("weight and dimension vector differ in length");
    Rational acc(0);
    for (std::size_t i = 0; i < chi_.size(); ++i) acc += chi_[i] * d.elements[i];
    return acc == chi0_ * d.root;
}

std::vector<Rational> Weight::spectrum(std::size_t i, const DimVector& d) const {
    std::vector<Rational> out(static_cast<std::size_t>(d.root), Rational(0));
    for (std::int64_t k = 0; k < d.elements.at(i); ++k) out[static_cast<std::size_t>(k)] = chi_.at(i);
    return out;
}

Weight Weight::slope_normalized(const DimVector& d) const {
    const Rational s = slope(d);
    return Weight(s > 0 ? s : chi0_, chi_);
}

Weight Weight::scaled(const Rational& c) const {
    std::vector<Rational> chi;
    chi.reserve(chi_.size());
    for (const auto& x : chi_) chi.push_back(x * c);
    return Weight(chi0_ * c, std::move(chi));
}

}  // namespace prl
