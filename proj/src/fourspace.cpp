#include "prl/fourspace.hpp"

#include "prl/errors.hpp"

#include <cmath>
#include <limits>

namespace prl {

using linalg::Complex;
using linalg::Matrix;

Poset four_subspace_poset() { return primitive_poset({1, 1, 1, 1}); }

SubspaceRep fourspace_rep(std::optional<Complex> lambda) {
    std::vector<Matrix> spans(4, Matrix::Zero(2, 1));
    spans[0](0, 0) = 1.0;
    spans[1](1, 0) = 1.0;
    spans[2](0, 0) = 1.0;
    spans[2](1, 0) = 1.0;
    if (lambda) {
        spans[3](0, 0) = 1.0;
        spans[3](1, 0) = *lambda;
    } else {
        spans[3](1, 0) = 1.0;
    }
    return make_rep(four_subspace_poset(), 2, std::move(spans));
}

bool is_exceptional(std::optional<Complex> lambda) {
    return !lambda || *lambda == Complex(0.0) || *lambda == Complex(1.0);
}

ProjectionSystem balanced_quadruple(double a, double b, double c) {
    const Complex i(0.0, 1.0);
    auto make = [](Complex p00, Complex p01, Complex p10, Complex p11) {
        Matrix m(2, 2);
        m << p00, p01, p10, p11;
        return Matrix(0.5 * m);
    };
    ProjectionSystem ps;
    ps.poset = four_subspace_poset();
    ps.weight = Weight(2, {1, 1, 1, 1});
    ps.ambient_dim = 2;
    ps.projections = {
        make(1 + a, -b - i * c, -b + i * c, 1 - a),
        make(1 - a, b - i * c, b + i * c, 1 + a),
        make(1 - a, -b + i * c, -b - i * c, 1 + a),
        make(1 + a, b + i * c, b - i * c, 1 - a),
    };
    ps.ranks = {1, 1, 1, 1};
    return ps;
}

SubspaceRep range_rep(const ProjectionSystem& ps, double tol) {
    std::vector<Matrix> spans;
    for (std::size_t i = 0; i < ps.projections.size(); ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(linalg::hermitian_part(ps.projections[i]));
        spans.push_back(eig.eigenvectors().rightCols(ps.ranks.at(i)));
    }
    return make_rep(ps.poset, ps.ambient_dim, std::move(spans), tol);
}

namespace {

SweepRow sweep_row(std::optional<Complex> lambda, const Weight& w, const FlowOptions& opts) {
    SweepRow row;
    row.lambda = lambda;
    row.exceptional = is_exceptional(lambda);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.a2 = row.b2 = row.c2 = row.sum = row.residual = nan;
    try {
        const SubspaceRep rep = fourspace_rep(lambda);
        FlowResult flow;
        try {
            flow = kempf_ness_flow(rep, w, opts);
        } catch (const NumericalBreakdown& e) {
            row.status = "breakdown";
            row.error = e.what();
            row.summands = decompose(rep, opts.seed).size();
            return row;
        }
        row.residual = flow.report.residual;
        row.iterations = flow.report.iterations;
        row.status = std::string(to_string(flow.report.status));
        if (flow.system) {
            try {
                const auto p = fourspace_parameters(*flow.system, 10 * opts.tol);
                row.a2 = p[0];
                row.b2 = p[1];
                row.c2 = p[2];
                row.sum = p[0] + p[1] + p[2];
                row.has_parameters = true;
            } catch (const Error& e) {
                row.error = e.what();
            }
            row.summands = decompose(range_rep(*flow.system), opts.seed).size();
        } else {
            row.summands = decompose(rep, opts.seed).size();
        }
    } catch (const Error& e) {
        row.status = "error";
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> fourspace_sweep(const std::vector<std::optional<Complex>>& grid, const Weight& w,
                                      const FlowOptions& opts) {
    std::vector<SweepRow> rows(grid.size());
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        rows[static_cast<std::size_t>(k)] = sweep_row(grid[static_cast<std::size_t>(k)], w, opts);
    }
    return rows;
}

std::vector<SweepRow> fourspace_sweep_serial(const std::vector<std::optional<Complex>>& grid, const Weight& w,
                                             const FlowOptions& opts) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const auto& lambda : grid) rows.push_back(sweep_row(lambda, w, opts));
    return rows;
}

}  // namespace prl
