#pragma once

#include "prl/moment.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prl {

/// (1,1,1,1) with elements a1..a4.
Poset four_subspace_poset();

/// Lines <e1>, <e2>, <e1+e2>, <e1+lambda e2> in C^2; nullopt is lambda = inf
/// and gives <e2> as the fourth line.
SubspaceRep fourspace_rep(std::optional<linalg::Complex> lambda);

/// lambda in {0, 1, inf}.
bool is_exceptional(std::optional<linalg::Complex> lambda);

/// The explicit balanced quadruple of projections with parameters (a, b, c),
/// weight (2;1,1,1,1).
ProjectionSystem balanced_quadruple(double a, double b, double c);

struct SweepRow {
    std::optional<linalg::Complex> lambda;
    double a2 = 0.0;
    double b2 = 0.0;
    double c2 = 0.0;
    double sum = 0.0;
    bool has_parameters = false;
    double residual = 0.0;
    std::string status;
    int iterations = 0;
    bool exceptional = false;
    /// Indecomposable summands of the flow output (or of the input when the
    /// flow did not converge).
    std::size_t summands = 0;
    std::string error;
};

/// One row per grid point, in grid order. Errors are recorded per row.
std::vector<SweepRow> fourspace_sweep(const std::vector<std::optional<linalg::Complex>>& grid, const Weight& w,
                                      const FlowOptions& opts);
std::vector<SweepRow> fourspace_sweep_serial(const std::vector<std::optional<linalg::Complex>>& grid,
                                             const Weight& w, const FlowOptions& opts);

/// Subspace data of a projection system: V_i = range P_i at the given
/// relative tolerance.
SubspaceRep range_rep(const ProjectionSystem& ps, double tol = 1e-6);

}  // namespace prl
