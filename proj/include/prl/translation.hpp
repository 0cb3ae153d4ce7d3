#pragma once

#include "prl/bound_quiver.hpp"
#include "prl/linrep.hpp"

#include <vector>

namespace prl {

/// Representation of a bound quiver: a space C^{dims[v]} per vertex and a
/// dims[target] x dims[source] matrix per arrow (indexed like the arrows).
struct QuiverRep {
    std::vector<Eigen::Index> dims;
    std::vector<linalg::Matrix> maps;
};

/// X(pi): vertex i carries V_i with its orthonormal basis, the root carries V,
/// and every arrow is the inclusion written in those bases.
QuiverRep rep_to_quiver(const SubspaceRep& rep, const BoundQuiver& bq);

/// Inverse translation: V_i is the image of X_i under the composite map to
/// the root along any path. Throws NotSubspaceRep for a non-injective arrow
/// map, RelationViolation when two parallel paths give different composites.
SubspaceRep quiver_to_rep(const Poset& poset, const BoundQuiver& bq, const QuiverRep& x,
                          double tol = kDefaultRankTol);

}  // namespace prl
