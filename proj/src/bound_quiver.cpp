#include "prl/bound_quiver.hpp"

#include "prl/errors.hpp"
#include "prl/rational.hpp"

#include <algorithm>
#include <map>

namespace prl {

namespace {

using RationalRow = std::vector<Rational>;

// Rank over Q by Gaussian elimination.
std::size_t exact_rank(std::vector<RationalRow> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            const Rational factor = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::vector<Path> enumerate_paths(const Quiver& q) {
    std::vector<Path> out;
    const std::size_t n = q.vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<Path> stack{Path{v, v, {}}};
        while (!stack.empty()) {
            Path p = std::move(stack.back());
            stack.pop_back();
            for (std::size_t a = 0; a < q.arrows().size(); ++a) {
                if (q.arrows()[a].source != p.target) continue;
                Path longer = p;
                longer.arrows.push_back(a);
                longer.target = q.arrows()[a].target;
                stack.push_back(std::move(longer));
            }
            out.push_back(std::move(p));
        }
    }
    std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
        return std::tie(a.source, a.target, a.arrows) < std::tie(b.source, b.target, b.arrows);
    });
    return out;
}

std::vector<std::size_t> concat(const Path& a, const Path& b, const Path& c) {
    std::vector<std::size_t> out;
    out.reserve(a.length() + b.length() + c.length());
    out.insert(out.end(), a.arrows.begin(), a.arrows.end());
    out.insert(out.end(), b.arrows.begin(), b.arrows.end());
    out.insert(out.end(), c.arrows.begin(), c.arrows.end());
    return out;
}

// Spanning vectors of the (a,b)-component of I (all two-sided path multiples
// of the generators), split by whether the multiple lies in RQ*I + I*RQ.
struct IdealComponent {
    std::vector<RationalRow> all;
    std::vector<RationalRow> decomposable;
    std::size_t basis_size = 0;
};

IdealComponent ideal_component(const BoundQuiver& bq, std::size_t a, std::size_t b) {
    IdealComponent out;
    const auto basis = bq.paths_between(a, b);
    out.basis_size = basis.size();
    if (basis.empty()) return out;
    std::map<std::size_t, std::size_t> local;
    for (std::size_t k = 0; k < basis.size(); ++k) local[basis[k]] = k;

    const auto& paths = bq.paths();
    for (const auto& rel : bq.relations()) {
        const Path& r1 = paths[rel.first];
        const Path& r2 = paths[rel.second];
        for (std::size_t pre : bq.paths_between(a, r1.source)) {
            for (std::size_t post : bq.paths_between(r1.target, b)) {
                RationalRow row(basis.size(), Rational(0));
                const std::size_t i1 = bq.path_index(a, concat(paths[pre], r1, paths[post]));
                const std::size_t i2 = bq.path_index(a, concat(paths[pre], r2, paths[post]));
                row[local.at(i1)] += 1;
                row[local.at(i2)] -= 1;
                const bool decomposable = paths[pre].length() > 0 || paths[post].length() > 0;
                if (decomposable) out.decomposable.push_back(row);
                out.all.push_back(std::move(row));
            }
        }
    }
    return out;
}

void check_unitriangular(const IntMatrix& c) {
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        if (c(i, i) != 1) throw Error("Cartan matrix diagonal entry is not 1");
        for (Eigen::Index j = 0; j < i; ++j) {
            if (c(i, j) != 0) throw Error("Cartan matrix is not upper triangular in the vertex order");
        }
    }
}

void require_size(const BoundQuiver& bq, std::size_t n) {
    if (n != bq.quiver().vertex_count()) {
        throw DimensionMismatch("dimension vector has " + std::to_string(n) + " entries, quiver has " +
                                std::to_string(bq.quiver().vertex_count()) + " vertices");
    }
}

}  // namespace

DimVector operator+(const DimVector& a, const DimVector& b) {
    if (a.elements.size() != b.elements.size()) throw DimensionMismatch("dimension vectors differ in length");
    DimVector out{a.root + b.root, a.elements};
    for (std::size_t i = 0; i < out.elements.size(); ++i) out.elements[i] += b.elements[i];
    return out;
}

std::vector<std::int64_t> vertex_vector(const Quiver& q, const DimVector& d) {
    if (!q.poset_derived() || !q.root()) throw Error("quiver is not poset-derived");
    if (d.elements.size() != q.element_vertices().size()) {
        throw DimensionMismatch("dimension vector has " + std::to_string(d.elements.size()) +
                                " element entries, poset has " + std::to_string(q.element_vertices().size()));
    }
    std::vector<std::int64_t> out(q.vertex_count(), 0);
    out[*q.root()] = d.root;
    for (std::size_t i = 0; i < d.elements.size(); ++i) out[q.element_vertices()[i]] = d.elements[i];
    return out;
}

std::vector<std::size_t> BoundQuiver::paths_between(std::size_t source, std::size_t target) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < paths_.size(); ++k) {
        if (paths_[k].source == source && paths_[k].target == target) out.push_back(k);
    }
    return out;
}

std::size_t BoundQuiver::path_index(std::size_t source, std::span<const std::size_t> arrows) const {
    auto it = std::lower_bound(paths_.begin(), paths_.end(), source, [](const Path& p, std::size_t s) {
        return p.source < s;
    });
    for (; it != paths_.end() && it->source == source; ++it) {
        if (std::equal(it->arrows.begin(), it->arrows.end(), arrows.begin(), arrows.end())) {
            return static_cast<std::size_t>(it - paths_.begin());
        }
    }
    throw Error("arrow sequence is not a path of the quiver");
}

BoundQuiver unbound_quiver(const Quiver& q) {
    BoundQuiver bq;
    bq.quiver_ = q;
    bq.paths_ = enumerate_paths(q);
    return bq;
}

BoundQuiver commutativity_ideal(const Quiver& q) {
    BoundQuiver bq = unbound_quiver(q);
    const auto& paths = bq.paths_;
    for (std::size_t a = 0; a < paths.size(); ++a) {
        for (std::size_t b = a + 1; b < paths.size(); ++b) {
            if (paths[a].source != paths[b].source || paths[a].target != paths[b].target) continue;
            if (paths[a].length() < 2 || paths[b].length() < 2) {
                const auto& v = q.vertices();
                throw NotHasseQuiver("arrow " + v[paths[a].source] + " -> " + v[paths[a].target] +
                                     " is parallel to a longer path");
            }
            bq.relations_.push_back({a, b});
        }
    }
    return bq;
}

IntMatrix minimal_relation_counts(const BoundQuiver& bq) {
    const auto n = static_cast<Eigen::Index>(bq.quiver().vertex_count());
    IntMatrix r = IntMatrix::Zero(n, n);
    if (bq.relations().empty()) return r;
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            IdealComponent comp = ideal_component(bq, static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            if (comp.all.empty()) continue;
            r(a, b) = static_cast<std::int64_t>(exact_rank(std::move(comp.all))) -
                      static_cast<std::int64_t>(exact_rank(std::move(comp.decomposable)));
        }
    }
    return r;
}

IntMatrix cartan_matrix(const BoundQuiver& bq) {
    const auto n = static_cast<Eigen::Index>(bq.quiver().vertex_count());
    IntMatrix c = IntMatrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a; b < n; ++b) {
            IdealComponent comp = ideal_component(bq, static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            c(a, b) = static_cast<std::int64_t>(comp.basis_size) - static_cast<std::int64_t>(exact_rank(std::move(comp.all)));
        }
    }
    check_unitriangular(c);
    return c;
}

IntMatrix unitriangular_inverse(const IntMatrix& c) {
    check_unitriangular(c);
    const Eigen::Index n = c.rows();
    IntMatrix inv = IntMatrix::Identity(n, n);
    // back substitution column by column: C * X = I
    for (Eigen::Index col = 0; col < n; ++col) {
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            std::int64_t acc = (i == col) ? 1 : 0;
            for (Eigen::Index k = i + 1; k < n; ++k) acc -= c(i, k) * inv(k, col);
            inv(i, col) = acc;
        }
    }
    return inv;
}

std::int64_t euler_form(const BoundQuiver& bq, std::span<const std::int64_t> d, std::span<const std::int64_t> e) {
    require_size(bq, d.size());
    require_size(bq, e.size());
    const IntMatrix inv = unitriangular_inverse(cartan_matrix(bq));
    std::int64_t acc = 0;
    for (Eigen::Index i = 0; i < inv.rows(); ++i) {
        for (Eigen::Index j = 0; j < inv.cols(); ++j) {
            acc += d[static_cast<std::size_t>(i)] * inv(i, j) * e[static_cast<std::size_t>(j)];
        }
    }
    return acc;
}

std::int64_t euler_form(const BoundQuiver& bq, const DimVector& d, const DimVector& e) {
    return euler_form(bq, vertex_vector(bq.quiver(), d), vertex_vector(bq.quiver(), e));
}

QuotientDimBound quotient_dim_lower_bound(const BoundQuiver& bq, std::span<const std::int64_t> d) {
    require_size(bq, d.size());
    QuotientDimBound out;
    std::int64_t squares = 0;
    for (auto v : d) squares += v * v;
    std::int64_t arrows = 0;
    for (const auto& a : bq.quiver().arrows()) arrows += d[a.source] * d[a.target];
    const IntMatrix r = minimal_relation_counts(bq);
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        for (Eigen::Index j = 0; j < r.cols(); ++j) {
            out.relation_correction += r(i, j) * d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)];
        }
    }
    out.unbound_value = 1 - squares + arrows;
    out.value = out.unbound_value - out.relation_correction;
    out.empty = std::all_of(d.begin(), d.end(), [](std::int64_t v) { return v == 0; });
    return out;
}

QuotientDimBound quotient_dim_lower_bound(const BoundQuiver& bq, const DimVector& d) {
    return quotient_dim_lower_bound(bq, vertex_vector(bq.quiver(), d));
}

}  // namespace prl
