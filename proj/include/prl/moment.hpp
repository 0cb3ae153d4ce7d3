#pragma once

#include "prl/linrep.hpp"
#include "prl/stability.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace prl {

/// Hermitian idempotents P_i with ranks d_i, together with the weight they
/// are meant to balance.
struct ProjectionSystem {
    Poset poset;
    Weight weight;
    Eigen::Index ambient_dim = 0;
    std::vector<linalg::Matrix> projections;
    std::vector<Eigen::Index> ranks;
};

/// Projections onto the V_i of a representation.
ProjectionSystem projection_system(const SubspaceRep& rep, const Weight& w);

struct FlowOptions {
    double tol = 1e-8;
    int max_iter = 20000;
    /// Initial step; 1/(4 chi0) when unset.
    std::optional<double> step;
    std::uint64_t seed = 0;
    /// Start from a Haar-random unitary drawn from seed instead of I.
    bool random_start = false;
    std::optional<linalg::Matrix> initial_metric;
    double cond_cap = 1e12;
};

enum class FlowStatus { converged, plateau, max_iter };

std::string_view to_string(FlowStatus s);

struct FlowReport {
    linalg::Matrix final_metric;
    double residual = 0.0;
    int iterations = 0;
    FlowStatus status = FlowStatus::max_iter;
    /// Residual before the first iteration and after every iteration.
    std::vector<double> history;
    double condition = 1.0;
    double final_step = 0.0;
};

struct FlowResult {
    std::optional<ProjectionSystem> system;
    FlowReport report;
};

/// mu = sum chi_i P_{g V_i} - chi0 I. Throws SingularMetric.
linalg::Matrix moment_value(const SubspaceRep& rep, const linalg::Matrix& g, const Weight& w);

/// F(g) = |mu(g)|_F^2.
double kempf_ness_objective(const SubspaceRep& rep, const linalg::Matrix& g, const Weight& w);

/// d/dt F(exp(tH) g) at t = 0 for Hermitian H: 4 Re tr(mu D) with
/// D = sum chi_i (I - P_i) H P_i.
double kempf_ness_derivative(const SubspaceRep& rep, const linalg::Matrix& g, const Weight& w,
                             const linalg::Matrix& h);

/// Hermitian G with Re tr(G H) equal to the derivative above.
linalg::Matrix kempf_ness_gradient(const SubspaceRep& rep, const linalg::Matrix& g, const Weight& w);

/// Descent g <- exp(-eps mu) g with Armijo backtracking. Throws
/// NoTraceIdentity, NumericalBreakdown.
FlowResult kempf_ness_flow(const SubspaceRep& rep, const Weight& w, const FlowOptions& opts = {});

struct OrthoscalarReport {
    double hermitian = 0.0;
    double idempotency = 0.0;
    double rank = 0.0;
    double nesting = 0.0;
    double orthoscalar = 0.0;
    bool pass = false;
};

/// Spectral-norm violations; rank is max |tr P_i - d_i|.
OrthoscalarReport orthoscalar_check(const ProjectionSystem& ps, double tol);

/// A_i = sqrt(chi_i / chi0) Q_i with Q_i an orthonormal basis of range P_i.
/// Throws CheckFailed unless A_i^* A_i = chi'_i I and sum A_i A_i^* = I.
std::vector<linalg::Matrix> hopf_normal_form(const ProjectionSystem& ps, double tol = 1e-8);

struct InvariantEntry {
    std::vector<std::size_t> word;
    linalg::Complex value;
};

/// tr(P_{w1} ... P_{wk}) for one representative word per rotation class
/// (its least rotation), k <= max_len, ordered by length then lexicographically.
std::vector<InvariantEntry> unitary_invariants(const ProjectionSystem& ps, std::size_t max_len);

/// (tr P1P4, tr P1P3, tr P1P2) for a balanced quadruple of lines in C^2.
/// Throws WrongShape, CheckFailed.
std::array<double, 3> fourspace_parameters(const ProjectionSystem& ps, double tol = 1e-8);

/// Flow certificate for stability_check: converged iff the residual reaches
/// opts.tol.
FlowOracle make_flow_oracle(FlowOptions opts = {});

}  // namespace prl
