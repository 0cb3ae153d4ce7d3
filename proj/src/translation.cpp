#include "prl/translation.hpp"

#include "prl/errors.hpp"

namespace prl {

using linalg::Matrix;

namespace {

void require_poset_quiver(const Poset& poset, const BoundQuiver& bq) {
    const Quiver& q = bq.quiver();
    if (!q.poset_derived() || !q.root() || q.element_vertices().size() != poset.size()) {
        throw PosetMismatch("bound quiver is not the Hasse quiver of this poset");
    }
    for (std::size_t i = 0; i < poset.size(); ++i) {
        if (q.vertices()[q.element_vertices()[i]] != poset.element(i)) {
            throw PosetMismatch("bound quiver is not the Hasse quiver of this poset");
        }
    }
}

Matrix composite(const QuiverRep& x, const Path& p) {
    Matrix m = Matrix::Identity(x.dims[p.source], x.dims[p.source]);
    for (std::size_t a : p.arrows) m = x.maps[a] * m;
    return m;
}

}  // namespace

QuiverRep rep_to_quiver(const SubspaceRep& rep, const BoundQuiver& bq) {
    require_poset_quiver(rep.poset(), bq);
    const Quiver& q = bq.quiver();
    const std::size_t root = *q.root();
    std::vector<Matrix> basis(q.vertex_count());
    for (std::size_t i = 0; i < rep.poset().size(); ++i) basis[q.element_vertices()[i]] = rep.basis(i);
    basis[root] = Matrix::Identity(rep.ambient_dim(), rep.ambient_dim());

    QuiverRep x;
    x.dims.reserve(q.vertex_count());
    for (const auto& b : basis) x.dims.push_back(b.cols());
    for (const auto& a : q.arrows()) x.maps.push_back(basis[a.target].adjoint() * basis[a.source]);
    return x;
}

SubspaceRep quiver_to_rep(const Poset& poset, const BoundQuiver& bq, const QuiverRep& x, double tol) {
    require_poset_quiver(poset, bq);
    const Quiver& q = bq.quiver();
    if (x.dims.size() != q.vertex_count() || x.maps.size() != q.arrows().size()) {
        throw DimensionMismatch("quiver representation does not match the quiver");
    }
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
        const Arrow& arrow = q.arrows()[a];
        const Matrix& m = x.maps[a];
        if (m.rows() != x.dims[arrow.target] || m.cols() != x.dims[arrow.source]) {
            throw DimensionMismatch("map on arrow " + q.vertices()[arrow.source] + " -> " + q.vertices()[arrow.target] +
                                    " has the wrong shape");
        }
        if (m.cols() > 0 && linalg::numerical_rank(m, tol) != m.cols()) {
            throw NotSubspaceRep("map on arrow " + q.vertices()[arrow.source] + " -> " + q.vertices()[arrow.target] +
                                 " is not injective");
        }
    }
    const auto& paths = bq.paths();
    for (const auto& rel : bq.relations()) {
        const Matrix lhs = composite(x, paths[rel.first]);
        const Matrix rhs = composite(x, paths[rel.second]);
        const double scale = std::max({1.0, linalg::spectral_norm(lhs), linalg::spectral_norm(rhs)});
        if (linalg::spectral_norm(lhs - rhs) > tol * scale * 1e3) {
            throw RelationViolation("relation between " + q.vertices()[paths[rel.first].source] + " and " +
                                    q.vertices()[paths[rel.first].target] + " is not satisfied");
        }
    }
    const std::size_t root = *q.root();
    std::vector<Matrix> spans;
    spans.reserve(poset.size());
    for (std::size_t i = 0; i < poset.size(); ++i) {
        const std::size_t v = q.element_vertices()[i];
        const auto to_root = bq.paths_between(v, root);
        if (to_root.empty()) throw Error("element has no path to the root");
        spans.push_back(composite(x, paths[to_root.front()]));
    }
    return make_rep(poset, x.dims[root], std::move(spans), tol);
}

}  // namespace prl
