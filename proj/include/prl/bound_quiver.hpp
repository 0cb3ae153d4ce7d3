#pragma once

#include "prl/poset.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

namespace prl {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Dimension vector (d0; d_i) of a poset representation: root entry first,
/// then one entry per element in stored poset order.
struct DimVector {
    std::int64_t root = 0;
    std::vector<std::int64_t> elements;

    friend bool operator==(const DimVector&, const DimVector&) = default;
};

DimVector operator+(const DimVector& a, const DimVector& b);

/// Reorders (d0; d_i) into the vertex order of a poset-derived quiver.
std::vector<std::int64_t> vertex_vector(const Quiver& q, const DimVector& d);

struct Path {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> arrows;  // arrow indices in travel order

    [[nodiscard]] std::size_t length() const noexcept { return arrows.size(); }
};

/// Relation generator first - second between two parallel paths.
struct ParallelPair {
    std::size_t first = 0;   // index into BoundQuiver::paths()
    std::size_t second = 0;
};

/// Quiver together with a relation ideal given by a generating set of
/// commutativity relations.
class BoundQuiver {
public:
    [[nodiscard]] const Quiver& quiver() const noexcept { return quiver_; }
    /// All directed paths, trivial paths included.
    [[nodiscard]] const std::vector<Path>& paths() const noexcept { return paths_; }
    [[nodiscard]] const std::vector<ParallelPair>& relations() const noexcept { return relations_; }
    [[nodiscard]] std::vector<std::size_t> paths_between(std::size_t source, std::size_t target) const;
    /// Index of the path with the given endpoints and arrow sequence.
    [[nodiscard]] std::size_t path_index(std::size_t source, std::span<const std::size_t> arrows) const;

private:
    friend BoundQuiver unbound_quiver(const Quiver& q);
    friend BoundQuiver commutativity_ideal(const Quiver& q);

    Quiver quiver_;
    std::vector<Path> paths_;
    std::vector<ParallelPair> relations_;
};

/// The quiver with I = 0.
BoundQuiver unbound_quiver(const Quiver& q);

/// One generator per unordered pair of distinct parallel paths. Throws
/// NotHasseQuiver when an arrow is parallel to a longer path (such a pair
/// would not lie in the square of the arrow ideal).
BoundQuiver commutativity_ideal(const Quiver& q);

/// r(i,j) = dim of the (i,j)-component of I / (RQ*I + I*RQ), computed with
/// exact rational linear algebra on the path space.
IntMatrix minimal_relation_counts(const BoundQuiver& bq);

/// Entry (i,j) = dimension of e_i (CQ/I) e_j, the paths i -> j modulo I.
/// Upper unitriangular in the stored (topological) vertex order; throws
/// Error if that fails.
IntMatrix cartan_matrix(const BoundQuiver& bq);

/// Exact inverse of an integer unitriangular matrix.
IntMatrix unitriangular_inverse(const IntMatrix& c);

/// <d, e> = d^t C^{-1} e with the Cartan matrix above (vertex order).
/// Without relations this is sum_q d_q e_q - sum_{i->j} d_i e_j.
std::int64_t euler_form(const BoundQuiver& bq, std::span<const std::int64_t> d, std::span<const std::int64_t> e);
std::int64_t euler_form(const BoundQuiver& bq, const DimVector& d, const DimVector& e);

struct QuotientDimBound {
    /// 1 - sum d_i^2 + sum_{i->j} d_i d_j - sum r(i,j) d_i d_j
    std::int64_t value = 0;
    /// 1 - sum d_i^2 + sum_{i->j} d_i d_j (the I = 0 part, 1 - <d,d> unbound)
    std::int64_t unbound_value = 0;
    /// sum r(i,j) d_i d_j
    std::int64_t relation_correction = 0;
    /// zero dimension vector: the quotient is empty, value reported by convention
    bool empty = false;
};

QuotientDimBound quotient_dim_lower_bound(const BoundQuiver& bq, std::span<const std::int64_t> d);
QuotientDimBound quotient_dim_lower_bound(const BoundQuiver& bq, const DimVector& d);

}  // namespace prl
