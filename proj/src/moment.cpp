#include "prl/moment.hpp"

#include "prl/errors.hpp"

#include <cmath>
#include <limits>

namespace prl {

using linalg::Complex;
using linalg::Matrix;

namespace {

std::vector<Matrix> projections_at(const SubspaceRep& rep, const Matrix& g) {
    const Eigen::Index n = rep.ambient_dim();
    std::vector<Matrix> out;
    out.reserve(rep.bases().size());
    for (const auto& b : rep.bases()) {
        if (b.cols() == 0) {
            out.push_back(Matrix::Zero(n, n));
            continue;
        }
        Eigen::HouseholderQR<Matrix> qr(g * b);
        const Matrix q = qr.householderQ() * Matrix::Identity(n, b.cols());
        out.push_back(q * q.adjoint());
    }
    return out;
}

std::vector<double> chi_values(const Weight& w) {
    std::vector<double> out;
    for (const auto& c : w.chi()) out.push_back(to_double(c));
    return out;
}

void require_shapes(const SubspaceRep& rep, const Matrix& g, const Weight& w) {
    if (g.rows() != rep.ambient_dim() || g.cols() != rep.ambient_dim()) {
        throw DimensionMismatch("metric has the wrong size");
    }
    if (w.size() != rep.bases().size()) throw DimensionMismatch("weight does not match the poset");
}

Matrix moment_from(const std::vector<Matrix>& ps, const std::vector<double>& chi, double chi0, Eigen::Index n) {
    Matrix mu = -chi0 * Matrix::Identity(n, n);
    for (std::size_t i = 0; i < ps.size(); ++i) mu += chi[i] * ps[i];
    return linalg::hermitian_part(mu);
}

struct FlowState {
    std::vector<Matrix> ps;
    Matrix mu;
    double objective = 0.0;
};

FlowState evaluate(const SubspaceRep& rep, const Matrix& g, const std::vector<double>& chi, double chi0) {
    FlowState s;
    s.ps = projections_at(rep, g);
    s.mu = moment_from(s.ps, chi, chi0, rep.ambient_dim());
    s.objective = s.mu.squaredNorm();
    return s;
}

Matrix gradient_from(const FlowState& s, const std::vector<double>& chi) {
    const Eigen::Index n = s.mu.rows();
    Matrix acc = Matrix::Zero(n, n);
    const Matrix id = Matrix::Identity(n, n);
    for (std::size_t i = 0; i < s.ps.size(); ++i) acc += chi[i] * (s.ps[i] * s.mu * (id - s.ps[i]));
    return 4.0 * linalg::hermitian_part(acc);
}

}  // namespace

std::string_view to_string(FlowStatus s) {
    switch (s) {
        case FlowStatus::converged: return "converged";
        case FlowStatus::plateau: return "plateau";
        case FlowStatus::max_iter: return "max_iter";
    }
    return "unknown";
}

ProjectionSystem projection_system(const SubspaceRep& rep, const Weight& w) {
    if (w.size() != rep.bases().size()) throw DimensionMismatch("weight does not match the poset");
    ProjectionSystem ps;
    ps.poset = rep.poset();
    ps.weight = w;
    ps.ambient_dim = rep.ambient_dim();
    for (std::size_t i = 0; i < rep.bases().size(); ++i) {
        ps.projections.push_back(rep.projector(i));
        ps.ranks.push_back(rep.dim(i));
    }
    return ps;
}

Matrix moment_value(const SubspaceRep& rep, const Matrix& g, const Weight& w) {
    require_shapes(rep, g, w);
    if (rep.ambient_dim() > 0 && linalg::condition_number(g) > 1e15) throw SingularMetric("metric is singular");
    return moment_from(projections_at(rep, g), chi_values(w), to_double(w.chi0()), rep.ambient_dim());
}

double kempf_ness_objective(const SubspaceRep& rep, const Matrix& g, const Weight& w) {
    return moment_value(rep, g, w).squaredNorm();
}

double kempf_ness_derivative(const SubspaceRep& rep, const Matrix& g, const Weight& w, const Matrix& h) {
    const Matrix grad = kempf_ness_gradient(rep, g, w);
    return (grad * h).trace().real();
}

Matrix kempf_ness_gradient(const SubspaceRep& rep, const Matrix& g, const Weight& w) {
    require_shapes(rep, g, w);
    if (rep.ambient_dim() > 0 && linalg::condition_number(g) > 1e15) throw SingularMetric("metric is singular");
    const auto chi = chi_values(w);
    return gradient_from(evaluate(rep, g, chi, to_double(w.chi0())), chi);
}

FlowResult kempf_ness_flow(const SubspaceRep& rep, const Weight& w, const FlowOptions& opts) {
    const DimVector d = rep.dim_vector();
    if (!w.trace_identity(d)) {
        Rational lhs(0);
        for (std::size_t i = 0; i < w.size(); ++i) lhs += w.chi()[i] * d.elements[i];
        throw NoTraceIdentity("sum chi_i d_i = " + format_rational(lhs) + " but chi0 d0 = " +
                              format_rational(w.chi0() * d.root));
    }
    const Eigen::Index n = rep.ambient_dim();
    const auto chi = chi_values(w);
    const double chi0 = to_double(w.chi0());

    Matrix g = Matrix::Identity(n, n);
    if (opts.initial_metric) {
        g = *opts.initial_metric;
        if (g.rows() != n || g.cols() != n) throw DimensionMismatch("initial metric has the wrong size");
        if (n > 0 && linalg::condition_number(g) > opts.cond_cap) throw SingularMetric("initial metric is singular");
    } else if (opts.random_start) {
        std::mt19937_64 rng(opts.seed);
        g = linalg::random_unitary(n, rng);
    }

    FlowResult result;
    FlowReport& rep_out = result.report;
    FlowState state = evaluate(rep, g, chi, chi0);
    rep_out.history.push_back(std::sqrt(state.objective));
    double eps = opts.step.value_or(1.0 / (4.0 * chi0));
    int accepts = 0;
    int flat = 0;
    const Matrix id = Matrix::Identity(n, n);

    for (;;) {
        const double residual = std::sqrt(state.objective);
        if (residual < opts.tol) {
            rep_out.status = FlowStatus::converged;
            break;
        }
        if (rep_out.iterations >= opts.max_iter) {
            rep_out.status = FlowStatus::max_iter;
            break;
        }
        ++rep_out.iterations;

        const double grad_norm = gradient_from(state, chi).norm();
        if (grad_norm < 1e-10) {
            // mu commutes with every P_i: no descent direction left
            if (residual > 100.0 * opts.tol && ++flat >= 50) {
                rep_out.history.push_back(residual);
                rep_out.status = FlowStatus::plateau;
                break;
            }
            rep_out.history.push_back(residual);
            continue;
        }
        flat = 0;

        double slope = 0.0;
        for (std::size_t i = 0; i < state.ps.size(); ++i) {
            slope -= 4.0 * chi[i] * ((id - state.ps[i]) * state.mu * state.ps[i]).squaredNorm();
        }
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving) {
            Matrix trial_g = linalg::hermitian_exp(state.mu, -eps) * g;
            FlowState trial = evaluate(rep, trial_g, chi, chi0);
            if (trial.objective <= state.objective + 1e-4 * eps * slope) {
                g = std::move(trial_g);
                state = std::move(trial);
                accepted = true;
                break;
            }
            eps *= 0.5;
            accepts = 0;
        }
        if (!accepted) {
            rep_out.history.push_back(residual);
            rep_out.status = FlowStatus::plateau;
            break;
        }
        const double cond = linalg::condition_number(g);
        if (cond > opts.cond_cap) {
            throw NumericalBreakdown("metric condition number " + std::to_string(cond) + " exceeds the cap after " +
                                     std::to_string(rep_out.iterations) + " iterations");
        }
        if (++accepts >= 5) {
            eps *= 2.0;
            accepts = 0;
        }
        rep_out.history.push_back(std::sqrt(state.objective));
    }

    rep_out.final_metric = g;
    rep_out.residual = std::sqrt(state.objective);
    rep_out.condition = n > 0 ? linalg::condition_number(g) : 1.0;
    rep_out.final_step = eps;
    if (rep_out.status == FlowStatus::converged) {
        ProjectionSystem ps;
        ps.poset = rep.poset();
        ps.weight = w;
        ps.ambient_dim = n;
        ps.projections = std::move(state.ps);
        ps.ranks = d.elements;
        result.system = std::move(ps);
    }
    return result;
}

OrthoscalarReport orthoscalar_check(const ProjectionSystem& ps, double tol) {
    OrthoscalarReport r;
    const Eigen::Index n = ps.ambient_dim;
    const std::size_t m = ps.poset.size();
    if (ps.projections.size() != m || ps.ranks.size() != m || ps.weight.size() != m) {
        const double inf = std::numeric_limits<double>::infinity();
        r.hermitian = r.idempotency = r.rank = r.nesting = r.orthoscalar = inf;
        return r;
    }
    Matrix sum = -to_double(ps.weight.chi0()) * Matrix::Identity(n, n);
    for (std::size_t i = 0; i < m; ++i) {
        const Matrix& p = ps.projections[i];
        if (p.rows() != n || p.cols() != n) {
            r.hermitian = std::numeric_limits<double>::infinity();
            continue;
        }
        r.hermitian = std::max(r.hermitian, linalg::spectral_norm(p - p.adjoint()));
        r.idempotency = std::max(r.idempotency, linalg::spectral_norm(p * p - p));
        r.rank = std::max(r.rank, std::abs(p.trace().real() - static_cast<double>(ps.ranks[i])));
        sum += to_double(ps.weight.chi()[i]) * p;
        for (std::size_t j = 0; j < m; ++j) {
            if (!ps.poset.less(i, j) || ps.projections[j].rows() != n) continue;
            const Matrix& q = ps.projections[j];
            r.nesting = std::max({r.nesting, linalg::spectral_norm(p * q - p), linalg::spectral_norm(q * p - p)});
        }
    }
    if (std::isfinite(r.hermitian)) r.orthoscalar = linalg::spectral_norm(sum);
    r.pass = r.hermitian < tol && r.idempotency < tol && r.rank < tol && r.nesting < tol && r.orthoscalar < tol;
    return r;
}

std::vector<Matrix> hopf_normal_form(const ProjectionSystem& ps, double tol) {
    const Eigen::Index n = ps.ambient_dim;
    if (ps.projections.size() != ps.poset.size() || ps.ranks.size() != ps.poset.size() ||
        ps.weight.size() != ps.poset.size()) {
        throw CheckFailed("projection system is inconsistent");
    }
    if (!ps.weight.trace_identity(DimVector{n, ps.ranks})) throw CheckFailed("trace identity fails");
    std::vector<Matrix> out;
    Matrix total = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < ps.projections.size(); ++i) {
        const Eigen::Index di = ps.ranks[i];
        Eigen::SelfAdjointEigenSolver<Matrix> eig(linalg::hermitian_part(ps.projections[i]));
        Matrix q = eig.eigenvectors().rightCols(di);
        for (Eigen::Index c = 0; c < di; ++c) {
            Eigen::Index k = 0;
            q.col(c).cwiseAbs().maxCoeff(&k);
            q.col(c) *= std::conj(q(k, c)) / std::abs(q(k, c));
        }
        if (linalg::spectral_norm(q * q.adjoint() - ps.projections[i]) > tol) {
            throw CheckFailed("projection " + ps.poset.element(i) + " is not an orthogonal projection of rank " +
                              std::to_string(di));
        }
        const double chi_prime = to_double(ps.weight.chi()[i] / ps.weight.chi0());
        Matrix a = std::sqrt(chi_prime) * q;
        if (linalg::spectral_norm(a.adjoint() * a - chi_prime * Matrix::Identity(di, di)) > tol) {
            throw CheckFailed("A^*A differs from chi' I for " + ps.poset.element(i));
        }
        total += a * a.adjoint();
        out.push_back(std::move(a));
    }
    if (linalg::spectral_norm(total - Matrix::Identity(n, n)) > tol) throw CheckFailed("sum A A^* differs from I");
    return out;
}

std::vector<InvariantEntry> unitary_invariants(const ProjectionSystem& ps, std::size_t max_len) {
    std::vector<InvariantEntry> out;
    const std::size_t letters = ps.projections.size();
    if (letters == 0) return out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::size_t> word(len, 0);
        for (;;) {
            bool least = true;
            for (std::size_t s = 1; s < len && least; ++s) {
                std::vector<std::size_t> rot(word.begin() + static_cast<std::ptrdiff_t>(s), word.end());
                rot.insert(rot.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(s));
                if (rot < word) least = false;
            }
            if (least) {
                Matrix prod = ps.projections[word[0]];
                for (std::size_t k = 1; k < len; ++k) prod = prod * ps.projections[word[k]];
                out.push_back({word, prod.trace()});
            }
            std::size_t pos = len;
            while (pos > 0 && word[pos - 1] + 1 == letters) word[--pos] = 0;
            if (pos == 0) break;
            ++word[pos - 1];
        }
    }
    return out;
}

std::array<double, 3> fourspace_parameters(const ProjectionSystem& ps, double tol) {
    bool shape = ps.poset.size() == 4 && ps.ambient_dim == 2 && ps.projections.size() == 4 && ps.ranks.size() == 4 &&
                 ps.weight.size() == 4;
    for (std::size_t i = 0; shape && i < 4; ++i) {
        shape = ps.ranks[i] == 1 && ps.weight.chi()[i] * 2 == ps.weight.chi0();
        for (std::size_t j = 0; shape && j < 4; ++j) shape = !ps.poset.less(i, j);
    }
    if (!shape) throw WrongShape("expected four lines in C^2 of poset (1,1,1,1) with weight (2;1,1,1,1)");
    if (!orthoscalar_check(ps, tol).pass) throw CheckFailed("projection system is not orthoscalar");
    const auto& p = ps.projections;
    return {(p[0] * p[3]).trace().real(), (p[0] * p[2]).trace().real(), (p[0] * p[1]).trace().real()};
}

FlowOracle make_flow_oracle(FlowOptions opts) {
    return [opts](const SubspaceRep& rep, const Weight& w) {
        OracleOutcome out;
        try {
            const FlowResult r = kempf_ness_flow(rep, w, opts);
            out.converged = r.report.status == FlowStatus::converged;
            out.residual = r.report.residual;
            out.condition = r.report.condition;
            out.status = std::string(to_string(r.report.status));
        } catch (const NumericalBreakdown&) {
            out.residual = std::numeric_limits<double>::quiet_NaN();
            out.condition = std::numeric_limits<double>::infinity();
            out.status = "breakdown";
        }
        return out;
    };
}

}  // namespace prl
