#include "helpers.hpp"
#include "prl/bound_quiver.hpp"
#include "prl/errors.hpp"
#include "prl/translation.hpp"

#include <doctest.h>

#include <random>

using namespace prl;

namespace {

BoundQuiver bound(const Poset& p) { return commutativity_ideal(hasse_quiver(p)); }

Poset diamond() {
    const std::vector<CoverPair> covers{{"x", "y"}, {"x", "z"}};
    return build_poset({"x", "y", "z"}, covers);
}

Poset n4() {
    for (const auto& [name, p] : critical_posets()) {
        if (name == "(N,4)") return p;
    }
    throw std::logic_error("missing (N,4)");
}

// Independent path count by dynamic programming over the topological order.
IntMatrix path_counts(const Quiver& q) {
    const auto n = static_cast<Eigen::Index>(q.vertex_count());
    IntMatrix c = IntMatrix::Identity(n, n);
    for (Eigen::Index t = 0; t < n; ++t) {
        for (const auto& a : q.arrows()) {
            if (static_cast<Eigen::Index>(a.target) != t) continue;
            for (Eigen::Index s = 0; s < n; ++s) c(s, t) += c(s, static_cast<Eigen::Index>(a.source));
        }
    }
    return c;
}

IntMatrix zeta(const Poset& p, const Quiver& q) {
    const auto n = static_cast<Eigen::Index>(q.vertex_count());
    IntMatrix z = IntMatrix::Zero(n, n);
    const auto root = static_cast<Eigen::Index>(*q.root());
    z(root, root) = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto vi = static_cast<Eigen::Index>(q.element_vertices()[i]);
        z(vi, root) = 1;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p.less_equal(i, j)) z(vi, static_cast<Eigen::Index>(q.element_vertices()[j])) = 1;
        }
    }
    return z;
}

std::int64_t unbound_sum(const Quiver& q, const std::vector<std::int64_t>& d, const std::vector<std::int64_t>& e) {
    std::int64_t acc = 0;
    for (std::size_t v = 0; v < d.size(); ++v) acc += d[v] * e[v];
    for (const auto& a : q.arrows()) acc -= d[a.source] * e[a.target];
    return acc;
}

std::vector<std::int64_t> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::int64_t> v(n);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % 6);
    return v;
}

}  // namespace

TEST_CASE("commutativity ideal examples") {
    CHECK(bound(primitive_poset({1, 1})).relations().empty());
    const BoundQuiver d = bound(diamond());
    REQUIRE(d.relations().size() == 1);
    const auto& paths = d.paths();
    const auto& rel = d.relations()[0];
    const Quiver& q = d.quiver();
    CHECK(q.vertices()[paths[rel.first].source] == "x");
    CHECK(q.vertices()[paths[rel.first].target] == "*");
    CHECK(paths[rel.first].length() == 2);
    CHECK(paths[rel.second].length() == 2);

    const BoundQuiver n = bound(n4());
    REQUIRE(n.relations().size() == 1);
    CHECK(n.quiver().vertices()[n.paths()[n.relations()[0].first].source] == "a3");
}

TEST_CASE("path basis agrees with dynamic-programming path counts") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Quiver q = hasse_quiver(testing::random_poset(1 + rng() % 6, 0.4, rng));
        const BoundQuiver bq = unbound_quiver(q);
        const IntMatrix c = path_counts(q);
        for (std::size_t s = 0; s < q.vertex_count(); ++s) {
            for (std::size_t t = 0; t < q.vertex_count(); ++t) {
                CHECK(static_cast<std::int64_t>(bq.paths_between(s, t).size()) ==
                      c(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)));
            }
        }
    }
}

TEST_CASE("non-hasse quivers are rejected for ideal construction") {
    const Quiver q = Quiver::make({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_THROWS_AS(commutativity_ideal(q), NotHasseQuiver);
}

TEST_CASE("minimal relation counts") {
    CHECK(minimal_relation_counts(bound(primitive_poset({1, 1}))).isZero());

    const BoundQuiver d = bound(diamond());
    const IntMatrix r = minimal_relation_counts(d);
    const auto x = static_cast<Eigen::Index>(*d.quiver().index_of("x"));
    const auto root = static_cast<Eigen::Index>(*d.quiver().root());
    CHECK(r(x, root) == 1);
    CHECK(r.sum() == 1);

    const IntMatrix rn = minimal_relation_counts(bound(n4()));
    CHECK(rn.sum() == 1);
    CHECK((rn.array() != 0).count() == 1);
}

TEST_CASE("relations generated by smaller ones are not minimal") {
    // x < y1, y2 < z: the relation x -> * is a multiple of x -> z
    const std::vector<CoverPair> covers{{"x", "y1"}, {"x", "y2"}, {"y1", "z"}, {"y2", "z"}};
    const BoundQuiver bq = bound(build_poset({"x", "y1", "y2", "z"}, covers));
    CHECK(bq.relations().size() == 2);
    const IntMatrix r = minimal_relation_counts(bq);
    CHECK(r.sum() == 1);
    const auto x = static_cast<Eigen::Index>(*bq.quiver().index_of("x"));
    const auto z = static_cast<Eigen::Index>(*bq.quiver().index_of("z"));
    CHECK(r(x, z) == 1);
}

TEST_CASE("cartan matrix examples") {
    const Quiver single = hasse_quiver(Poset{});
    CHECK(cartan_matrix(unbound_quiver(single)) == IntMatrix::Ones(1, 1));

    const BoundQuiver chain = bound(primitive_poset({2}));
    IntMatrix expect(3, 3);
    expect << 1, 1, 1, 0, 1, 1, 0, 0, 1;
    CHECK(chain.quiver().vertices() == std::vector<std::string>{"a1", "a2", "*"});
    CHECK(cartan_matrix(chain) == expect);

    const BoundQuiver d = bound(diamond());
    const IntMatrix c = cartan_matrix(d);
    CHECK(c == zeta(diamond(), d.quiver()));
    CHECK(cartan_matrix(unbound_quiver(d.quiver())) != c);
}

TEST_CASE("cartan matrix equals the zeta matrix on random posets") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const Poset p = testing::random_poset(1 + rng() % 6, 0.45, rng);
        const BoundQuiver bq = bound(p);
        const IntMatrix c = cartan_matrix(bq);
        CHECK(c == zeta(p, bq.quiver()));
        CHECK(c * unitriangular_inverse(c) == IntMatrix::Identity(c.rows(), c.cols()));
    }
}

TEST_CASE("euler form examples") {
    const Poset four = primitive_poset({1, 1, 1, 1});
    const BoundQuiver star = unbound_quiver(hasse_quiver(four));
    const DimVector d{2, {1, 1, 1, 1}};
    CHECK(euler_form(star, d, d) == 0);
    const DimVector unit{0, {0, 1, 0, 0}};
    CHECK(euler_form(star, unit, unit) == 1);
    CHECK(euler_form(star, DimVector{1, {0, 0, 0, 0}}, DimVector{1, {0, 0, 0, 0}}) == 1);

    const Poset e8 = primitive_poset({1, 2, 5});
    const BoundQuiver e8q = unbound_quiver(hasse_quiver(e8));
    const DimVector de8{6, {3, 2, 4, 1, 2, 3, 4, 5}};
    CHECK(euler_form(e8q, de8, de8) == 0);
}

TEST_CASE("unbound euler form matches the explicit sum and is bilinear") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const Poset p = testing::random_poset(1 + rng() % 6, 0.4, rng);
        const Quiver q = hasse_quiver(p);
        const BoundQuiver ub = unbound_quiver(q);
        const BoundQuiver bq = commutativity_ideal(q);
        const auto d = random_vector(q.vertex_count(), rng);
        const auto e = random_vector(q.vertex_count(), rng);
        const auto f = random_vector(q.vertex_count(), rng);
        CHECK(euler_form(ub, d, e) == unbound_sum(q, d, e));
        std::vector<std::int64_t> ef(e.size());
        for (std::size_t k = 0; k < e.size(); ++k) ef[k] = e[k] + f[k];
        CHECK(euler_form(bq, d, ef) == euler_form(bq, d, e) + euler_form(bq, d, f));
        CHECK(euler_form(bq, ef, d) == euler_form(bq, e, d) + euler_form(bq, f, d));
    }
}

TEST_CASE("euler form rejects wrong sizes") {
    const BoundQuiver bq = bound(primitive_poset({1, 1}));
    CHECK_THROWS_AS(euler_form(bq, DimVector{1, {1}}, DimVector{1, {1}}), DimensionMismatch);
}

TEST_CASE("quotient dimension bound for the tame primitive posets") {
    struct Case {
        std::vector<int> chains;
        DimVector d;
    };
    const std::vector<Case> cases{
        {{1, 1, 1, 1}, {2, {1, 1, 1, 1}}},
        {{2, 2, 2}, {3, {1, 2, 1, 2, 1, 2}}},
        {{1, 3, 3}, {4, {2, 1, 2, 3, 1, 2, 3}}},
        {{1, 2, 5}, {6, {3, 2, 4, 1, 2, 3, 4, 5}}},
    };
    for (const auto& c : cases) {
        const Poset p = primitive_poset(std::span<const int>(c.chains));
        const auto b = quotient_dim_lower_bound(bound(p), c.d);
        CHECK(b.value == 1);
        CHECK(b.relation_correction == 0);
        CHECK_FALSE(b.empty);
    }
    // sum of squares = 24 = sum over arrows for (2,2,2)
    std::int64_t squares = 9;
    for (auto v : cases[1].d.elements) squares += v * v;
    CHECK(squares == 24);
}

TEST_CASE("quotient dimension bound for the zero vector") {
    const auto b = quotient_dim_lower_bound(bound(primitive_poset({1, 2})), DimVector{0, {0, 0, 0}});
    CHECK(b.value == 1);
    CHECK(b.empty);
}

TEST_CASE("bound equals one minus the bound euler form") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const Poset p = testing::random_poset(1 + rng() % 6, 0.5, rng);
        const BoundQuiver bq = bound(p);
        const auto d = random_vector(bq.quiver().vertex_count(), rng);
        // equality needs r to be the Mobius function, true when every
        // interval has at most one relation; checked here on the unbound part
        const auto b = quotient_dim_lower_bound(bq, d);
        CHECK(b.unbound_value == 1 - unbound_sum(bq.quiver(), d, d));
    }
    const BoundQuiver d = bound(diamond());
    const std::vector<std::int64_t> v{2, 1, 3, 4};
    CHECK(quotient_dim_lower_bound(d, v).value == 1 - euler_form(d, v, v));
}

TEST_CASE("translation to the bound quiver and back") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Poset p = testing::random_poset(1 + rng() % 5, 0.4, rng);
        const SubspaceRep rep = testing::random_rep(p, 1 + static_cast<Eigen::Index>(rng() % 4), rng);
        const BoundQuiver bq = bound(p);
        const QuiverRep x = rep_to_quiver(rep, bq);
        const SubspaceRep back = quiver_to_rep(p, bq, x);
        CHECK(same_subspaces(rep, back, 1e-10));
        CHECK(back.dim_vector() == rep.dim_vector());
        const auto vv = vertex_vector(bq.quiver(), rep.dim_vector());
        for (std::size_t v = 0; v < vv.size(); ++v) CHECK(x.dims[v] == vv[v]);
    }
}

TEST_CASE("translation preserves direct sums") {
    std::mt19937_64 rng(37);
    const Poset p = primitive_poset({1, 2});
    const SubspaceRep a = testing::random_rep(p, 2, rng);
    const SubspaceRep b = testing::random_rep(p, 3, rng);
    const BoundQuiver bq = bound(p);
    const QuiverRep xs = rep_to_quiver(direct_sum(a, b), bq);
    const QuiverRep xa = rep_to_quiver(a, bq);
    const QuiverRep xb = rep_to_quiver(b, bq);
    for (std::size_t v = 0; v < xs.dims.size(); ++v) CHECK(xs.dims[v] == xa.dims[v] + xb.dims[v]);
}

TEST_CASE("translation examples and errors") {
    const Poset p = primitive_poset({1, 1});
    const SubspaceRep rep = make_rep(p, 2, {testing::column({1, 0}), testing::column({1, 1})});
    const BoundQuiver bq = bound(p);
    const QuiverRep x = rep_to_quiver(rep, bq);
    CHECK(x.maps.size() == 2);
    CHECK(same_subspaces(quiver_to_rep(p, bq, x), rep, 1e-12));

    const SubspaceRep zero = zero_rep(p);
    CHECK(quiver_to_rep(p, bq, rep_to_quiver(zero, bq)).ambient_dim() == 0);

    QuiverRep bad = x;
    bad.dims[0] = 2;
    for (std::size_t a = 0; a < bq.quiver().arrows().size(); ++a) {
        if (bq.quiver().arrows()[a].source != 0) continue;
        bad.maps[a] = linalg::Matrix::Zero(2, 2);
        bad.maps[a](0, 0) = 1.0;
    }
    CHECK_THROWS_AS(quiver_to_rep(p, bq, bad), NotSubspaceRep);

    const BoundQuiver dq = bound(diamond());
    const SubspaceRep drep = make_rep(diamond(), 2,
                                      {testing::column({1, 0}), linalg::Matrix::Identity(2, 2),
                                       linalg::Matrix::Identity(2, 2)});
    QuiverRep dx = rep_to_quiver(drep, dq);
    const auto y = *dq.quiver().index_of("y");
    for (std::size_t a = 0; a < dq.quiver().arrows().size(); ++a) {
        if (dq.quiver().arrows()[a].target == y) dx.maps[a] = testing::column({0, 1});
    }
    CHECK_THROWS_AS(quiver_to_rep(diamond(), dq, dx), RelationViolation);
}
