#include "helpers.hpp"
#include "prl/errors.hpp"
#include "prl/fourspace.hpp"
#include "prl/io.hpp"

#include <doctest.h>

#include <random>

using namespace prl;
using linalg::Complex;

namespace {

io::PosetLoader fixed(const Poset& p) {
    return [p](const std::string&) { return p; };
}

std::size_t error_line(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("poset text round trip") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const Poset p = testing::random_poset(rng() % 7, 0.4, rng);
        const std::string text = io::format_poset(p);
        CHECK(io::parse_poset(text) == p);
        CHECK(io::format_poset(io::parse_poset(text)) == text);
    }
    const Poset p = io::parse_poset("# comment\nelem x\n\nelem y\ncover x < y\n");
    CHECK(p.size() == 2);
    CHECK(p.less(p.require_index("x"), p.require_index("y")));
}

TEST_CASE("poset parse errors carry line numbers") {
    CHECK(error_line([] { io::parse_poset("elem a\nbogus a\n"); }) == 2);
    CHECK(error_line([] { io::parse_poset("elem a\nelem b\ncover a b\n"); }) == 3);
    CHECK(error_line([] { io::parse_poset("elem a\ncover a < b\n"); }) == 2);
    CHECK_THROWS_AS(io::parse_poset("elem a\nelem b\ncover a < b\ncover b < a\n"), CycleError);
    CHECK(error_line([] { io::parse_poset("elem a\nelem a\n"); }) == 2);
}

TEST_CASE("complex, lambda, weight and dimension vector text") {
    CHECK(io::parse_complex("3+4j") == Complex(3, 4));
    CHECK(io::parse_complex("-0.5-2j") == Complex(-0.5, -2));
    CHECK(io::parse_complex("2") == Complex(2, 0));
    CHECK(io::format_complex(Complex(1, 0)) == "1+0j");
    std::mt19937_64 rng(103);
    std::normal_distribution<double> normal;
    for (int k = 0; k < 50; ++k) {
        const Complex z(normal(rng), normal(rng));
        CHECK(io::parse_complex(io::format_complex(z)) == z);
    }
    CHECK_FALSE(io::parse_lambda("inf").has_value());
    CHECK(*io::parse_lambda("3+4i") == Complex(3, 4));
    CHECK(io::format_lambda(std::nullopt) == "inf");
    const auto grid = io::parse_lambda_grid("2, -1 0.5,inf");
    REQUIRE(grid.size() == 4);
    CHECK_FALSE(grid[3].has_value());
    CHECK_THROWS_AS(io::parse_lambda("x"), ParseError);

    const Weight w = io::parse_weight("2; 1, 1, 1/2, 3");
    CHECK(w.chi()[2] == Rational(1, 2));
    CHECK(io::parse_weight(io::format_weight(w)) == w);
    CHECK_THROWS_AS(io::parse_weight("2 1 1"), ParseError);
    CHECK_THROWS_AS(io::parse_weight("2; 0, 1"), InvalidWeight);
    const DimVector d = io::parse_dim_vector("6; 3,2,4,1,2,3,4,5");
    CHECK(d.root == 6);
    CHECK(d.elements.size() == 8);
    CHECK(io::parse_dim_vector(io::format_dim_vector(d)) == d);
}

TEST_CASE("rep files round trip byte for byte") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 10; ++trial) {
        const Poset p = testing::random_poset(1 + rng() % 4, 0.4, rng);
        io::RepFile f{"x.poset", testing::random_rep(p, 1 + static_cast<Eigen::Index>(rng() % 3), rng), std::nullopt};
        if (trial % 2 == 0) f.weight = Weight(Rational(1), std::vector<Rational>(p.size(), Rational(1)));
        const std::string text = io::format_rep(f);
        const io::RepFile back = io::parse_rep(text, fixed(p));
        CHECK(back.poset_path == "x.poset");
        CHECK(same_subspaces(back.rep, f.rep, 1e-12));
        CHECK(back.weight == f.weight);
        CHECK(io::format_rep(back) == text);
    }
}

TEST_CASE("rep parse errors") {
    const Poset p = primitive_poset({1, 1});
    CHECK(error_line([&] { io::parse_rep("poset p\nambient 2\nspan a1 1\n1+0j\n", fixed(p)); }) != 0);
    CHECK(error_line([&] { io::parse_rep("poset p\nambient 2\nspan a1 1\n1+0j\nzz\n", fixed(p)); }) == 5);
    CHECK(error_line([&] { io::parse_rep("poset p\nambient two\n", fixed(p)); }) == 2);
    CHECK(error_line([&] { io::parse_rep("poset p\nambient 1\nspan a1 1\n1\nspan a9 1\n1\n", fixed(p)); }) == 5);
    CHECK_THROWS_AS(io::parse_rep("poset p\nambient 1\nspan a1 1\n0\nspan a2 1\n1\n", fixed(p)), RankDeficient);
}

TEST_CASE("projection files round trip") {
    const auto r = kempf_ness_flow(fourspace_rep(Complex(2)), Weight(2, {1, 1, 1, 1}));
    REQUIRE(r.system.has_value());
    const io::ProjectionFile f{"four.poset", *r.system};
    const std::string text = io::format_projections(f);
    const auto back = io::parse_projections(text, fixed(four_subspace_poset()));
    CHECK(back.system.weight == r.system->weight);
    CHECK(back.system.ranks == r.system->ranks);
    for (std::size_t i = 0; i < 4; ++i) CHECK(back.system.projections[i] == r.system->projections[i]);
    CHECK(io::format_projections(back) == text);
    CHECK_THROWS_AS(io::parse_projections("poset p\nambient 2\n", fixed(four_subspace_poset())), ParseError);
}

TEST_CASE("json and csv reports") {
    const auto v = stability_check(fourspace_rep(Complex(2)), Weight(2, {1, 1, 1, 1}));
    const auto j = io::verdict_json(v);
    CHECK(j.at("class") == "stable");
    const auto m = io::matrix_json(linalg::Matrix::Identity(2, 2));
    CHECK(m.size() == 2);

    SweepRow row;
    row.lambda = Complex(2);
    row.status = "converged";
    const std::string csv = io::sweep_csv({row});
    CHECK(csv.rfind("lambda,a2,b2,c2,sum,residual,status,iterations,exceptional,summands\n", 0) == 0);
    CHECK(csv.find("\n2,") != std::string::npos);
}
