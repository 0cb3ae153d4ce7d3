#include "helpers.hpp"
#include "prl/errors.hpp"
#include "prl/fourspace.hpp"
#include "prl/moment.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace prl;
using linalg::Complex;
using linalg::Matrix;

namespace {

Weight four_weight() { return Weight(Rational(2), {Rational(1), Rational(1), Rational(1), Rational(1)}); }

Matrix line_projector(Complex x, Complex y) {
    Matrix v(2, 1);
    v << x, y;
    return v * v.adjoint() / v.squaredNorm();
}

SubspaceRep two_lines(Complex y2) {
    return make_rep(primitive_poset({1, 1}), 2, {testing::column({1, 0}), testing::column({1, y2})});
}

const Weight& line_pair_weight() {
    static const Weight w(Rational(1), {Rational(1), Rational(1)});
    return w;
}

std::vector<Complex> invariant_values(const ProjectionSystem& ps, std::size_t len) {
    std::vector<Complex> out;
    for (const auto& e : unitary_invariants(ps, len)) out.push_back(e.value);
    return out;
}

void check_close(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < tol);
}

}  // namespace

TEST_CASE("moment map at the identity") {
    const SubspaceRep rep = fourspace_rep(Complex(2));
    const Matrix mu = moment_value(rep, Matrix::Identity(2, 2), four_weight());
    const Matrix expect = line_projector(1, 0) + line_projector(0, 1) + line_projector(1, 1) +
                          line_projector(1, 2) - 2.0 * Matrix::Identity(2, 2);
    CHECK((mu - expect).norm() < 1e-12);
    CHECK(std::abs(kempf_ness_objective(rep, Matrix::Identity(2, 2), four_weight()) - expect.squaredNorm()) < 1e-12);
    CHECK(std::abs(mu.trace()) < 1e-12);
    CHECK_THROWS_AS(moment_value(rep, Matrix::Zero(2, 2), four_weight()), SingularMetric);
}

TEST_CASE("moment map is unitarily equivariant") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const SubspaceRep rep = fourspace_rep(Complex(0.5 + trial, -0.3));
        const Matrix g = linalg::random_gaussian(2, 2, rng) + 2.0 * Matrix::Identity(2, 2);
        const Matrix u = linalg::random_unitary(2, rng);
        const Matrix lhs = moment_value(rep, u * g, four_weight());
        const Matrix rhs = u * moment_value(rep, g, four_weight()) * u.adjoint();
        CHECK((lhs - rhs).norm() < 1e-10);
    }
}

TEST_CASE("gradient matches finite differences") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix line = linalg::random_gaussian(3, 1, rng);
        Matrix plane(3, 2);
        plane << line, linalg::random_gaussian(3, 1, rng);
        const SubspaceRep rep = make_rep(primitive_poset({1, 1, 2}), 3,
                                         {linalg::random_gaussian(3, 1, rng), linalg::random_gaussian(3, 1, rng), line, plane});
        std::vector<Rational> chi(4);
        for (auto& c : chi) c = Rational(static_cast<long>(1 + rng() % 3));
        const Weight w(Rational(2), chi);
        const Matrix g = linalg::random_gaussian(3, 3, rng) + 2.0 * Matrix::Identity(3, 3);
        const Matrix h = linalg::random_hermitian(3, rng);
        const double t = 1e-5;
        const double fd = (kempf_ness_objective(rep, linalg::hermitian_exp(h, t) * g, w) -
                           kempf_ness_objective(rep, linalg::hermitian_exp(h, -t) * g, w)) /
                          (2 * t);
        const double d = kempf_ness_derivative(rep, g, w, h);
        CHECK(std::abs(d) > 1e-6);
        CHECK(std::abs(fd - d) < 1e-6 * std::abs(d));
        const Matrix grad = kempf_ness_gradient(rep, g, w);
        CHECK((grad - grad.adjoint()).norm() < 1e-12);
        CHECK(std::abs((grad * h).trace().real() - d) < 1e-12 * (1.0 + std::abs(d)));
    }
}

TEST_CASE("gradient vanishes on flags") {
    std::mt19937_64 rng(74);
    for (int trial = 0; trial < 5; ++trial) {
        const SubspaceRep rep = testing::random_rep(primitive_poset({3}), 4, rng);
        const Weight w(Rational(1), {Rational(1), Rational(2), Rational(3)});
        const Matrix g = linalg::random_gaussian(4, 4, rng) + 2.0 * Matrix::Identity(4, 4);
        CHECK(kempf_ness_gradient(rep, g, w).norm() < 1e-10);
        const double f0 = kempf_ness_objective(rep, g, w);
        CHECK(std::abs(kempf_ness_objective(rep, linalg::random_gaussian(4, 4, rng), w) - f0) < 1e-9 * (1 + f0));
    }
}

TEST_CASE("flow converges for a generic four-subspace rep") {
    const auto r = kempf_ness_flow(fourspace_rep(Complex(-1)), four_weight());
    CHECK(r.report.status == FlowStatus::converged);
    CHECK(r.report.residual < 1e-8);
    REQUIRE(r.system.has_value());
    CHECK(orthoscalar_check(*r.system, 1e-8).pass);
    const Matrix mu = moment_value(fourspace_rep(Complex(-1)), r.report.final_metric, four_weight());
    CHECK(mu.norm() < 1e-8);
}

TEST_CASE("flow on two distinct lines gives complementary projections") {
    const auto r = kempf_ness_flow(two_lines(Complex(1)), line_pair_weight());
    REQUIRE(r.report.status == FlowStatus::converged);
    const auto& ps = *r.system;
    CHECK((ps.projections[1] - (Matrix::Identity(2, 2) - ps.projections[0])).norm() < 1e-7);
}

TEST_CASE("flow plateaus when the lines coincide") {
    const SubspaceRep rep = make_rep(primitive_poset({1, 1}), 2, {testing::column({1, 1}), testing::column({2, 2})});
    const auto r = kempf_ness_flow(rep, line_pair_weight());
    CHECK(r.report.status == FlowStatus::plateau);
    CHECK_FALSE(r.system.has_value());
    CHECK(std::abs(r.report.residual - std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("flow history is non-increasing") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 6; ++trial) {
        FlowOptions o;
        o.max_iter = 400;
        o.random_start = true;
        o.seed = rng();
        const auto r = kempf_ness_flow(fourspace_rep(Complex(0.3 + trial, 1.0)), four_weight(), o);
        REQUIRE(r.report.history.size() == static_cast<std::size_t>(r.report.iterations) + 1);
        for (std::size_t k = 1; k < r.report.history.size(); ++k) {
            CHECK(r.report.history[k] <= r.report.history[k - 1] * (1 + 1e-12));
        }
    }
}

TEST_CASE("flow requires the trace identity") {
    const Weight bad(Rational(1), {Rational(1), Rational(1), Rational(1), Rational(1)});
    CHECK_THROWS_AS(kempf_ness_flow(fourspace_rep(Complex(2)), bad), NoTraceIdentity);
}

TEST_CASE("explicit quadruple is orthoscalar and has the stated parameters") {
    std::mt19937_64 rng(83);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
        double a = normal(rng);
        double b = normal(rng);
        double c = normal(rng);
        const double r = std::sqrt(a * a + b * b + c * c);
        a /= r;
        b /= r;
        c /= r;
        const ProjectionSystem ps = balanced_quadruple(a, b, c);
        Matrix sum = Matrix::Zero(2, 2);
        for (const auto& p : ps.projections) sum += p;
        CHECK((sum - 2.0 * Matrix::Identity(2, 2)).norm() < 1e-12);
        CHECK(orthoscalar_check(ps, 1e-10).pass);
        // substitute into tr(P1 P_k) = (1 + s_k . s_1) / 2 with Bloch vectors s
        const auto params = fourspace_parameters(ps);
        CHECK(std::abs(params[0] - a * a) < 1e-12);
        CHECK(std::abs(params[1] - b * b) < 1e-12);
        CHECK(std::abs(params[2] - c * c) < 1e-12);
    }
}

TEST_CASE("orthoscalar check reports violations") {
    const ProjectionSystem good = balanced_quadruple(1, 0, 0);
    const auto ok = orthoscalar_check(good, 1e-10);
    CHECK(ok.pass);
    CHECK(ok.orthoscalar < 1e-12);

    ProjectionSystem half = good;
    for (auto& p : half.projections) p = 0.5 * Matrix::Identity(2, 2);
    const auto rep = orthoscalar_check(half, 1e-10);
    CHECK_FALSE(rep.pass);
    CHECK(std::abs(rep.idempotency - 0.25) < 1e-12);

    ProjectionSystem skew = good;
    skew.projections[0](0, 1) += 0.1;
    CHECK(orthoscalar_check(skew, 1e-10).hermitian > 0.01);

    const auto r = kempf_ness_flow(fourspace_rep(Complex(2)), four_weight());
    CHECK(orthoscalar_check(*r.system, 1e-7).pass);
}

TEST_CASE("orthoscalar nesting violations") {
    const Poset p = primitive_poset({2});
    ProjectionSystem ps;
    ps.poset = p;
    ps.weight = Weight(Rational(1), {Rational(1), Rational(1)});
    ps.ambient_dim = 2;
    ps.projections = {line_projector(1, 0), line_projector(0, 1)};
    ps.ranks = {1, 1};
    CHECK(orthoscalar_check(ps, 1e-10).nesting > 0.5);
}

TEST_CASE("hopf normal form") {
    const ProjectionSystem ps = balanced_quadruple(0.6, 0.8, 0);
    const auto a = hopf_normal_form(ps);
    REQUIRE(a.size() == 4);
    Matrix sum = Matrix::Zero(2, 2);
    for (const auto& ai : a) {
        CHECK(((ai.adjoint() * ai) - 0.5 * Matrix::Identity(1, 1)).norm() < 1e-12);
        sum += ai * ai.adjoint();
    }
    CHECK((sum - Matrix::Identity(2, 2)).norm() < 1e-12);

    ProjectionSystem broken = ps;
    broken.projections[0] = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(hopf_normal_form(broken), CheckFailed);
}

TEST_CASE("unitary invariants") {
    const ProjectionSystem ps = balanced_quadruple(0.6, 0.8, 0);
    const auto inv = unitary_invariants(ps, 2);
    REQUIRE(inv.size() == 14);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(inv[k].value - 1.0) < 1e-12);
    CHECK(inv[4].word == std::vector<std::size_t>{0, 0});
    CHECK(inv[5].word == std::vector<std::size_t>{0, 1});
    // tr(P1 P4) = a^2
    for (const auto& e : inv) {
        if (e.word == std::vector<std::size_t>{0, 3}) CHECK(std::abs(e.value - 0.36) < 1e-12);
        if (e.word == std::vector<std::size_t>{0, 2}) CHECK(std::abs(e.value - 0.64) < 1e-12);
    }
    // rotation classes of length-3 words over 4 letters: (64 + 2*4) / 3 = 24
    CHECK(unitary_invariants(ps, 3).size() == 14 + 24);
}

TEST_CASE("invariants do not depend on the starting gauge") {
    std::mt19937_64 rng(89);
    const SubspaceRep rep = fourspace_rep(Complex(2, 1));
    const auto base = kempf_ness_flow(rep, four_weight());
    REQUIRE(base.system.has_value());
    for (int trial = 0; trial < 5; ++trial) {
        FlowOptions o;
        o.random_start = true;
        o.seed = rng();
        const auto r = kempf_ness_flow(rep, four_weight(), o);
        REQUIRE(r.system.has_value());
        check_close(invariant_values(*r.system, 3), invariant_values(*base.system, 3), 1e-6);
    }
}

TEST_CASE("equivalent reps give unitarily equivalent projections") {
    std::mt19937_64 rng(97);
    const SubspaceRep rep = fourspace_rep(Complex(-2, 0.5));
    const auto base = kempf_ness_flow(rep, four_weight());
    REQUIRE(base.system.has_value());
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix g = linalg::random_gaussian(2, 2, rng) + Matrix::Identity(2, 2);
        const auto r = kempf_ness_flow(transform(rep, g), four_weight());
        REQUIRE(r.system.has_value());
        check_close(invariant_values(*r.system, 3), invariant_values(*base.system, 3), 1e-6);
        const auto pa = fourspace_parameters(*r.system, 1e-6);
        const auto pb = fourspace_parameters(*base.system, 1e-6);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(pa[k] - pb[k]) < 1e-6);
    }
}

TEST_CASE("fourspace parameters reject other shapes") {
    ProjectionSystem ps = balanced_quadruple(1, 0, 0);
    ps.weight = Weight(Rational(3), {Rational(1), Rational(1), Rational(1), Rational(1)});
    CHECK_THROWS_AS(fourspace_parameters(ps), WrongShape);
    ProjectionSystem off = balanced_quadruple(1, 0, 0);
    off.projections[0] = 0.5 * Matrix::Identity(2, 2);
    CHECK_THROWS_AS(fourspace_parameters(off), CheckFailed);
}
