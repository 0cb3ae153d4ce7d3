#pragma once

#include "prl/bound_quiver.hpp"

#include <optional>
#include <vector>

namespace prl {

struct Assignment {
    /// Entry per element, stored poset order.
    std::vector<std::int64_t> dims;
    QuotientDimBound bound;
    /// 1 - <d,d> with the Euler form of the bound quiver.
    std::int64_t euler_value = 0;
    /// Each connected component receives the entries listed at its positions.
    bool block_respecting = false;
};

struct AssignmentSearch {
    std::int64_t target = 1;
    /// The dimension vector read literally in stored element order.
    Assignment literal;
    bool literal_consistent = false;
    /// Every distinct rearrangement of the element entries with d_i <= d_j
    /// for i < j, in lexicographic order of dims.
    std::vector<Assignment> consistent;
    bool any_hits_target = false;
};

/// Tries all placements of the element entries of d on the elements of p.
AssignmentSearch search_assignments(const Poset& p, const DimVector& d, std::int64_t target = 1);

}  // namespace prl
