#pragma once

#include "prl/bound_quiver.hpp"
#include "prl/linalg.hpp"
#include "prl/poset.hpp"
#include "prl/rational.hpp"

#include <cstdint>
#include <vector>

namespace prl {

inline constexpr double kDefaultRankTol = 1e-9;

/// Linear representation (V; V_i) of a poset: V = C^d0 and each V_i given by
/// a spanning matrix of full column rank, with V_i inside V_j for i < j.
class SubspaceRep {
public:
    [[nodiscard]] const Poset& poset() const noexcept { return poset_; }
    [[nodiscard]] Eigen::Index ambient_dim() const noexcept { return ambient_; }
    /// Spanning matrices exactly as supplied.
    [[nodiscard]] const std::vector<linalg::Matrix>& spans() const noexcept { return spans_; }
    /// Orthonormal column bases of the same subspaces.
    [[nodiscard]] const std::vector<linalg::Matrix>& bases() const noexcept { return bases_; }
    [[nodiscard]] const linalg::Matrix& basis(std::size_t i) const { return bases_.at(i); }
    [[nodiscard]] Eigen::Index dim(std::size_t i) const { return bases_.at(i).cols(); }
    [[nodiscard]] DimVector dim_vector() const;
    [[nodiscard]] linalg::Matrix projector(std::size_t i) const { return linalg::projector(bases_.at(i)); }
    [[nodiscard]] double tolerance() const noexcept { return tol_; }

private:
    friend SubspaceRep make_rep(Poset, Eigen::Index, std::vector<linalg::Matrix>, double);

    Poset poset_;
    Eigen::Index ambient_ = 0;
    std::vector<linalg::Matrix> spans_;
    std::vector<linalg::Matrix> bases_;
    double tol_ = kDefaultRankTol;
};

/// Throws DimensionMismatch on shape errors, RankDeficient
/// when a spanning matrix lacks full column rank, NestingViolation when
/// i < j but V_i is not inside V_j.
SubspaceRep make_rep(Poset poset, Eigen::Index ambient_dim, std::vector<linalg::Matrix> spans,
                     double tol = kDefaultRankTol);

SubspaceRep zero_rep(const Poset& poset);

/// g . (V; V_i) = (V; g V_i) for invertible g.
SubspaceRep transform(const SubspaceRep& rep, const linalg::Matrix& g);

/// Same tolerance as the rep; throws PosetMismatch.
SubspaceRep direct_sum(const SubspaceRep& a, const SubspaceRep& b);

/// Equal ambient dimension and V_i = W_i for every element.
bool same_subspaces(const SubspaceRep& a, const SubspaceRep& b, double tol);

/// Basis of End(rep) = { f : f V_i inside V_i for all i }, as d0 x d0
/// matrices. Always contains the identity direction.
std::vector<linalg::Matrix> endomorphism_algebra(const SubspaceRep& rep);

/// Indecomposable summands, found by splitting along the generalized
/// eigenspaces of random endomorphisms. Deterministic for a given seed.
std::vector<SubspaceRep> decompose(const SubspaceRep& rep, std::uint64_t seed);

/// Weight chi = (chi0; chi_i) with positive rational entries.
class Weight {
public:
    Weight() = default;
    /// Throws InvalidWeight when an entry is not positive.
    Weight(Rational chi0, std::vector<Rational> chi);

    [[nodiscard]] const Rational& chi0() const noexcept { return chi0_; }
    [[nodiscard]] const std::vector<Rational>& chi() const noexcept { return chi_; }
    [[nodiscard]] std::size_t size() const noexcept { return chi_.size(); }

    /// chi'_i = chi_i / chi0.
    [[nodiscard]] std::vector<double> normalized() const;
    /// Stability form Theta = (chi0; -chi_i).
    [[nodiscard]] std::vector<Rational> theta() const;
    /// sum chi_i d_i / d0 (zero when d0 == 0).
    [[nodiscard]] Rational slope(const DimVector& d) const;
    /// sum chi_i d_i == chi0 d0, exactly.
    [[nodiscard]] bool trace_identity(const DimVector& d) const;
    /// Spectrum (chi_i, ..., chi_i, 0, ..., 0) of chi_i P_i.
    [[nodiscard]] std::vector<Rational> spectrum(std::size_t i, const DimVector& d) const;
    /// Same chi_i with chi0 replaced by the slope of d.
    [[nodiscard]] Weight slope_normalized(const DimVector& d) const;
    [[nodiscard]] Weight scaled(const Rational& c) const;

    friend bool operator==(const Weight&, const Weight&) = default;

private:
    Rational chi0_{1};
    std::vector<Rational> chi_;
};

}  // namespace prl
