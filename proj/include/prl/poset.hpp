#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prl {

/// Finite poset with a strict order. Elements are opaque string identifiers;
/// every matrix in the library indexes elements by their position in
/// elements().
class Poset {
public:
    Poset() = default;

    /// Validates that `strict_order` (row-major n*n, entry (i,j) set iff i < j)
    /// is irreflexive, antisymmetric and transitive.
    static Poset from_relation(std::vector<std::string> elements, std::vector<std::uint8_t> strict_order);

    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] bool empty() const noexcept { return elements_.empty(); }
    [[nodiscard]] const std::vector<std::string>& elements() const noexcept { return elements_; }
    [[nodiscard]] const std::string& element(std::size_t i) const { return elements_.at(i); }

    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view id) const;
    /// Throws UnknownElement.
    [[nodiscard]] std::size_t require_index(std::string_view id) const;

    [[nodiscard]] bool less(std::size_t i, std::size_t j) const { return order_[i * size() + j] != 0; }
    [[nodiscard]] bool less_equal(std::size_t i, std::size_t j) const { return i == j || less(i, j); }
    [[nodiscard]] bool comparable(std::size_t i, std::size_t j) const { return less_equal(i, j) || less(j, i); }

    /// Covering pairs (i, j): i < j with nothing strictly between.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> covers() const;
    [[nodiscard]] std::vector<std::size_t> maximal_elements() const;
    /// Stable linear extension: among available minimal elements the lowest
    /// index is taken first.
    [[nodiscard]] std::vector<std::size_t> linear_extension() const;
    /// Full (induced) subposet on the given element indices, in that order.
    [[nodiscard]] Poset induced(std::span<const std::size_t> subset) const;

    /// Labeled equality: same identifier set and same relation, independent
    /// of storage order.
    friend bool operator==(const Poset& a, const Poset& b);

private:
    Poset(std::vector<std::string> elements, std::vector<std::uint8_t> order)
        : elements_(std::move(elements)), order_(std::move(order)) {}

    std::vector<std::string> elements_;
    std::vector<std::uint8_t> order_;
};

using CoverPair = std::pair<std::string, std::string>;

/// Transitive closure of the given cover pairs. Throws DuplicateElement,
/// UnknownElement, CycleError.
Poset build_poset(std::vector<std::string> elements, std::span<const CoverPair> covers);

/// Disjoint union of chains with the given orders; elements are named
/// a1, a2, ... chain by chain, bottom to top. primitive_poset({1,2}) is the
/// three-element poset with a2 < a3.
Poset primitive_poset(std::span<const int> chain_orders);
Poset primitive_poset(std::initializer_list<int> chain_orders);

struct Arrow {
    std::size_t source;
    std::size_t target;
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite acyclic quiver. Vertices are stored in a topological order
/// (every arrow goes from a lower to a higher index).
class Quiver {
public:
    Quiver() = default;

    /// Throws CycleError if an arrow is a loop or goes against the vertex
    /// order, DuplicateElement on repeated vertex names.
    static Quiver make(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                       std::optional<std::size_t> root = std::nullopt);

    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_.size(); }
    [[nodiscard]] const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
    [[nodiscard]] std::optional<std::size_t> root() const noexcept { return root_; }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;

    [[nodiscard]] std::size_t out_degree(std::size_t v) const;
    [[nodiscard]] std::size_t in_degree(std::size_t v) const;
    /// reach(i, j) iff there is a directed path i -> j of length >= 0.
    [[nodiscard]] std::vector<std::uint8_t> reachability() const;

    /// For quivers built by hasse_quiver: vertex index of each poset element.
    [[nodiscard]] const std::vector<std::size_t>& element_vertices() const noexcept { return element_vertex_; }
    [[nodiscard]] bool poset_derived() const noexcept { return poset_derived_; }

private:
    friend Quiver hasse_quiver(const Poset& p);

    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::optional<std::size_t> root_;
    std::vector<std::size_t> element_vertex_;
    bool poset_derived_ = false;
};

inline constexpr std::string_view kRootName = "*";

/// Hasse quiver of the poset extended by a global maximum "*". Vertices are
/// the elements in linear-extension order followed by the root.
Quiver hasse_quiver(const Poset& p);

struct PrimitiveProfile {
    bool primitive = false;
    /// Chain orders sorted ascending (only meaningful when primitive).
    std::vector<std::size_t> chains;
};

PrimitiveProfile is_primitive(const Poset& p);

struct CriticalWitness {
    std::string critical;              // "(1,1,1,1)", ..., "(N,4)"
    std::vector<std::string> elements; // image of the critical poset's elements
};

struct FinitenessReport {
    bool finite = true;
    std::vector<CriticalWitness> witnesses;
};

/// The five critical posets, in the order (1,1,1,1), (2,2,2), (1,3,3),
/// (1,2,5), (N,4). (N,4) is a1 < a2 > a3 < a4 together with a chain
/// a5 < a6 < a7 < a8.
const std::vector<std::pair<std::string, Poset>>& critical_posets();

/// Representation-finite iff no full subposet is order-isomorphic to one of
/// the critical posets. Reports every embedded critical subposet (one
/// witness per distinct element subset and critical type).
FinitenessReport is_representation_finite(const Poset& p);

}  // namespace prl
