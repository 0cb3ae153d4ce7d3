#include "prl/bound_quiver.hpp"
#include "prl/errors.hpp"
#include "prl/fourspace.hpp"
#include "prl/io.hpp"
#include "prl/moment.hpp"
#include "prl/repro.hpp"
#include "prl/stability.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kBadInput = 1, kNoConvergence = 2, kBreakdown = 3 };

struct Globals {
    double tol = 1e-8;
    double rank_tol = prl::kDefaultRankTol;
    int max_iter = 20000;
    std::uint64_t seed = 0;
    std::string output = "text";
    std::optional<double> step;
};

prl::Poset load_poset(const std::string& path) { return prl::io::parse_poset(prl::io::read_file(path)); }

prl::io::RepFile load_rep(const std::string& path, double tol) {
    return prl::io::parse_rep(prl::io::read_file(path), prl::io::file_loader(fs::path(path).parent_path()), tol);
}

prl::FlowOptions flow_options(const Globals& g) {
    prl::FlowOptions o;
    o.tol = g.tol;
    o.max_iter = g.max_iter;
    o.seed = g.seed;
    o.step = g.step;
    return o;
}

prl::Weight pick_weight(const std::string& flag, const std::optional<prl::Weight>& from_file) {
    if (!flag.empty()) return prl::io::parse_weight(flag);
    if (from_file) return *from_file;
    throw prl::Error("no weight given (use --weight or a 'weight' line in the rep file)");
}

std::string matrix_text(const prl::IntMatrix& m) {
    std::ostringstream out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
        out << '\n';
    }
    return out.str();
}

json int_matrix_json(const prl::IntMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

std::string dims_text(const std::vector<std::int64_t>& dims) {
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? "," : "") + std::to_string(dims[i]);
    return out;
}

int cmd_hasse(const Globals& g, const std::string& poset_path) {
    const prl::Poset p = load_poset(poset_path);
    const prl::Quiver q = prl::hasse_quiver(p);
    if (g.output == "json") {
        json arrows = json::array();
        for (const auto& a : q.arrows()) arrows.push_back({q.vertices()[a.source], q.vertices()[a.target]});
        std::cout << json{{"vertices", q.vertices()}, {"arrows", arrows}}.dump(2) << '\n';
        return kOk;
    }
    std::cout << "vertices:";
    for (const auto& v : q.vertices()) std::cout << ' ' << v;
    std::cout << '\n' << "arrows: " << q.arrows().size() << '\n';
    for (const auto& a : q.arrows()) std::cout << q.vertices()[a.source] << " -> " << q.vertices()[a.target] << '\n';
    return kOk;
}

int cmd_kleiner(const Globals& g, const std::string& poset_path) {
    const prl::Poset p = load_poset(poset_path);
    const auto report = prl::is_representation_finite(p);
    const auto prim = prl::is_primitive(p);
    if (g.output == "json") {
        json witnesses = json::array();
        for (const auto& w : report.witnesses) witnesses.push_back({{"critical", w.critical}, {"elements", w.elements}});
        std::cout << json{{"representation_finite", report.finite},
                          {"primitive", prim.primitive},
                          {"chains", prim.primitive ? json(prim.chains) : json(nullptr)},
                          {"witnesses", witnesses}}
                         .dump(2)
                  << '\n';
        return kOk;
    }
    std::cout << "representation-finite: " << (report.finite ? "yes" : "no") << '\n';
    if (prim.primitive) {
        std::cout << "primitive: yes (";
        for (std::size_t i = 0; i < prim.chains.size(); ++i) std::cout << (i ? "," : "") << prim.chains[i];
        std::cout << ")\n";
    } else {
        std::cout << "primitive: no\n";
    }
    for (const auto& w : report.witnesses) {
        std::cout << "critical " << w.critical << ':';
        for (const auto& e : w.elements) std::cout << ' ' << e;
        std::cout << '\n';
    }
    return kOk;
}

prl::BoundQuiver bound_quiver_for(const prl::Poset& p, bool unbound) {
    const prl::Quiver q = prl::hasse_quiver(p);
    return unbound ? prl::unbound_quiver(q) : prl::commutativity_ideal(q);
}

int cmd_euler(const Globals& g, const std::string& poset_path, const std::string& d_text, const std::string& e_text,
              bool unbound, bool show_cartan) {
    const prl::Poset p = load_poset(poset_path);
    const prl::BoundQuiver bq = bound_quiver_for(p, unbound);
    const prl::DimVector d = prl::io::parse_dim_vector(d_text);
    const prl::DimVector e = prl::io::parse_dim_vector(e_text.empty() ? d_text : e_text);
    const auto value = prl::euler_form(bq, d, e);
    const prl::IntMatrix c = prl::cartan_matrix(bq);
    if (g.output == "json") {
        json j{{"euler_form", value}};
        if (show_cartan) {
            j["vertices"] = bq.quiver().vertices();
            j["cartan"] = int_matrix_json(c);
        }
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    std::cout << value << '\n';
    if (show_cartan) {
        std::cout << "vertices:";
        for (const auto& v : bq.quiver().vertices()) std::cout << ' ' << v;
        std::cout << '\n' << matrix_text(c);
    }
    return kOk;
}

int cmd_dim_quotient(const Globals& g, const std::string& poset_path, const std::string& d_text, bool unbound,
                     bool search) {
    const prl::Poset p = load_poset(poset_path);
    const prl::DimVector d = prl::io::parse_dim_vector(d_text);
    if (!search) {
        const prl::BoundQuiver bq = bound_quiver_for(p, unbound);
        const auto b = prl::quotient_dim_lower_bound(bq, d);
        if (g.output == "json") {
            std::cout << json{{"value", b.value},
                              {"unbound_value", b.unbound_value},
                              {"relation_correction", b.relation_correction},
                              {"empty", b.empty}}
                             .dump(2)
                      << '\n';
        } else {
            std::cout << b.value << '\n';
            if (b.empty) std::cout << "note: zero dimension vector, the quotient is empty\n";
        }
        return kOk;
    }
    const auto s = prl::search_assignments(p, d);
    auto row_json = [](const prl::Assignment& a) {
        return json{{"dims", a.dims},
                    {"value", a.bound.value},
                    {"unbound_value", a.bound.unbound_value},
                    {"one_minus_euler", a.euler_value},
                    {"block_respecting", a.block_respecting}};
    };
    std::size_t blocks = 0;
    for (const auto& a : s.consistent) blocks += a.block_respecting ? 1 : 0;
    if (g.output == "json") {
        json rows = json::array();
        for (const auto& a : s.consistent) rows.push_back(row_json(a));
        std::cout << json{{"elements", p.elements()},
                          {"target", s.target},
                          {"literal", row_json(s.literal)},
                          {"literal_consistent", s.literal_consistent},
                          {"consistent", rows},
                          {"block_respecting_count", blocks},
                          {"any_hits_target", s.any_hits_target},
                          {"discrepancy", !s.any_hits_target}}
                         .dump(2)
                  << '\n';
        return kOk;
    }
    std::cout << "elements:";
    for (const auto& e : p.elements()) std::cout << ' ' << e;
    std::cout << '\n';
    std::cout << "literal assignment " << dims_text(s.literal.dims) << ": value " << s.literal.bound.value
              << (s.literal_consistent ? "" : " (violates nesting)") << '\n';
    std::cout << "nesting-consistent assignments: " << s.consistent.size() << " (" << blocks
              << " keep each component's entries)\n";
    std::cout << "dims,value,unbound_value,block_respecting\n";
    for (const auto& a : s.consistent) {
        std::cout << dims_text(a.dims) << ',' << a.bound.value << ',' << a.bound.unbound_value << ','
                  << (a.block_respecting ? "yes" : "no") << '\n';
    }
    if (s.any_hits_target) {
        std::cout << "target " << s.target << " reached\n";
    } else {
        std::int64_t best = std::numeric_limits<std::int64_t>::min();
        for (const auto& a : s.consistent) best = std::max(best, a.bound.value);
        std::cout << "DISCREPANCY: no nesting-consistent assignment gives " << s.target;
        if (!s.consistent.empty()) std::cout << "; the largest value is " << best;
        std::cout << '\n';
    }
    return kOk;
}

int cmd_stability(const Globals& g, const std::string& rep_path, const std::string& weight, int restarts,
                  bool oracle, bool serial) {
    const auto f = load_rep(rep_path, g.rank_tol);
    const prl::Weight w = pick_weight(weight, f.weight);
    prl::StabilityOptions opts;
    opts.tol = g.rank_tol;
    opts.restarts = restarts;
    opts.seed = g.seed;
    opts.parallel = !serial;
    if (oracle) opts.flow_oracle = prl::make_flow_oracle(flow_options(g));
    const auto v = prl::stability_check(f.rep, w, opts);
    if (g.output == "json") {
        std::cout << prl::io::verdict_json(v).dump(2) << '\n';
        return kOk;
    }
    std::cout << "class: " << prl::to_string(v.cls) << '\n';
    std::cout << "slope: " << prl::format_rational(v.slope) << '\n';
    std::cout << "max f: " << prl::format_rational(v.witness_value) << '\n';
    std::cout << "trace identity: " << (v.trace_identity ? "yes" : "no") << '\n';
    std::cout << "methods:" << (v.methods.lattice_exact ? " lattice_exact" : "")
              << (v.methods.randomized ? " randomized" : "") << (v.methods.flow_oracle ? " flow_oracle" : "") << '\n';
    std::cout << "inconclusive: " << (v.inconclusive ? "yes" : "no") << '\n';
    if (v.witness) std::cout << "witness dimension: " << v.witness->cols() << '\n';
    for (const auto& s : v.summands) std::cout << "summand: " << prl::io::format_dim_vector(s) << '\n';
    if (v.oracle) {
        std::cout << "flow oracle: " << v.oracle->status << ", residual " << v.oracle->residual << ", condition "
                  << v.oracle->condition << '\n';
    }
    for (const auto& n : v.notes) std::cout << "note: " << n << '\n';
    return kOk;
}

int cmd_solve(const Globals& g, const std::string& rep_path, const std::string& weight,
              const std::string& projections_out, const std::string& report_out) {
    const auto f = load_rep(rep_path, g.rank_tol);
    const prl::Weight w = pick_weight(weight, f.weight);
    const auto result = prl::kempf_ness_flow(f.rep, w, flow_options(g));
    const json report = prl::io::flow_report_json(result.report);
    if (!report_out.empty()) prl::io::write_file(report_out, report.dump(2) + "\n");
    if (result.system && !projections_out.empty()) {
        // keep the poset reference valid relative to the output file
        std::string poset_path = f.poset_path;
        const fs::path rep_dir = fs::path(rep_path).parent_path();
        const fs::path out_dir = fs::path(projections_out).parent_path();
        if (fs::path(poset_path).is_relative() && fs::weakly_canonical(rep_dir.empty() ? "." : rep_dir) !=
                                                      fs::weakly_canonical(out_dir.empty() ? "." : out_dir)) {
            poset_path = fs::absolute(rep_dir / poset_path).lexically_normal().string();
        }
        prl::io::write_file(projections_out, prl::io::format_projections({poset_path, *result.system}));
    }
    if (g.output == "json") {
        std::cout << report.dump(2) << '\n';
    } else {
        std::cout << "status: " << prl::to_string(result.report.status) << '\n';
        std::cout << "residual: " << result.report.residual << '\n';
        std::cout << "iterations: " << result.report.iterations << '\n';
        std::cout << "condition: " << result.report.condition << '\n';
    }
    return result.report.status == prl::FlowStatus::converged ? kOk : kNoConvergence;
}

int cmd_invariants(const Globals& g, const std::string& path, std::size_t max_len, bool hopf) {
    const auto f = prl::io::parse_projections(prl::io::read_file(path),
                                              prl::io::file_loader(fs::path(path).parent_path()));
    const auto& ps = f.system;
    const auto inv = prl::unitary_invariants(ps, max_len);
    const auto check = prl::orthoscalar_check(ps, 10 * g.tol);
    std::optional<std::array<double, 3>> params;
    try {
        params = prl::fourspace_parameters(ps, 10 * g.tol);
    } catch (const prl::Error&) {
    }
    auto word_text = [&](const std::vector<std::size_t>& word) {
        std::string out;
        for (std::size_t k = 0; k < word.size(); ++k) out += (k ? " " : "") + ps.poset.element(word[k]);
        return out;
    };
    if (g.output == "json") {
        json words = json::array();
        for (const auto& e : inv) {
            words.push_back({{"word", word_text(e.word)}, {"trace", prl::io::format_complex(e.value)}});
        }
        json j{{"invariants", words}, {"orthoscalar", prl::io::orthoscalar_json(check)}};
        j["fourspace"] = params ? json(*params) : json(nullptr);
        if (hopf) {
            json a = json::array();
            for (const auto& m : prl::hopf_normal_form(ps, 10 * g.tol)) a.push_back(prl::io::matrix_json(m));
            j["hopf"] = a;
        }
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    std::cout << "orthoscalar: " << (check.pass ? "pass" : "fail") << " (hermitian " << check.hermitian
              << ", idempotency " << check.idempotency << ", rank " << check.rank << ", nesting " << check.nesting
              << ", sum " << check.orthoscalar << ")\n";
    if (params) std::cout << "a2,b2,c2: " << (*params)[0] << ',' << (*params)[1] << ',' << (*params)[2] << '\n';
    for (const auto& e : inv) std::cout << "tr(" << word_text(e.word) << ") = " << prl::io::format_complex(e.value) << '\n';
    if (hopf) {
        const auto a = prl::hopf_normal_form(ps, 10 * g.tol);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::cout << "A " << ps.poset.element(i) << '\n';
            for (const auto& row : prl::io::matrix_json(a[i])) {
                std::cout << " ";
                for (const auto& z : row) std::cout << ' ' << z.get<std::string>();
                std::cout << '\n';
            }
        }
    }
    return kOk;
}

int cmd_fourspace_sweep(const Globals& g, const std::string& grid, const std::string& weight, bool serial) {
    const auto lambdas = prl::io::parse_lambda_grid(grid);
    const prl::Weight w = prl::io::parse_weight(weight);
    const auto opts = flow_options(g);
    const auto rows = serial ? prl::fourspace_sweep_serial(lambdas, w, opts) : prl::fourspace_sweep(lambdas, w, opts);
    if (g.output == "json") {
        json out = json::array();
        for (const auto& r : rows) {
            out.push_back({{"lambda", prl::io::format_lambda(r.lambda)},
                           {"a2", r.a2},
                           {"b2", r.b2},
                           {"c2", r.c2},
                           {"sum", r.sum},
                           {"residual", r.residual},
                           {"status", r.status},
                           {"iterations", r.iterations},
                           {"exceptional", r.exceptional},
                           {"summands", r.summands},
                           {"error", r.error}});
        }
        std::cout << out.dump(2) << '\n';
        return kOk;
    }
    std::cout << prl::io::sweep_csv(rows);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Representations of finite posets: bound quivers, stability and orthoscalar solutions"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--tol", g.tol, "Flow residual tolerance")->envname("PRL_TOL")->capture_default_str();
    app.add_option("--rank-tol", g.rank_tol, "Relative rank tolerance for subspaces")
        ->envname("PRL_RANK_TOL")
        ->capture_default_str();
    app.add_option("--max-iter", g.max_iter, "Flow iteration limit")->envname("PRL_MAX_ITER")->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed")->envname("PRL_SEED")->capture_default_str();
    app.add_option("--output", g.output, "Output format")
        ->envname("PRL_OUTPUT")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--step", g.step, "Initial flow step (default 1/(4 chi0))")->envname("PRL_STEP");

    std::string poset_path;
    std::string rep_path;
    std::string d_text;
    std::string e_text;
    std::string weight;
    std::string projections_out;
    std::string report_out;
    std::string grid;
    std::string sweep_weight = "2; 1, 1, 1, 1";
    bool unbound = false;
    bool cartan = false;
    bool search = false;
    bool oracle = false;
    bool serial = false;
    bool hopf = false;
    int restarts = 200;
    std::size_t max_len = 4;

    auto* hasse = app.add_subcommand("hasse", "Hasse quiver of the poset extended by *");
    hasse->add_option("poset", poset_path, "Poset file")->required();

    auto* kleiner = app.add_subcommand("kleiner", "Representation-finiteness by critical subposets");
    kleiner->add_option("poset", poset_path, "Poset file")->required();

    auto* euler = app.add_subcommand("euler", "Euler form of the bound quiver");
    euler->add_option("poset", poset_path, "Poset file")->required();
    euler->add_option("-d,--dim", d_text, "Dimension vector 'd0; d_1, ...'")->required();
    euler->add_option("-e,--other", e_text, "Second dimension vector (default: same as --dim)");
    euler->add_flag("--unbound", unbound, "Ignore the commutativity relations");
    euler->add_flag("--cartan", cartan, "Also print the Cartan matrix");

    auto* dimq = app.add_subcommand("dim-quotient", "Lower bound for the dimension of the quotient");
    dimq->add_option("poset", poset_path, "Poset file")->required();
    dimq->add_option("-d,--dim", d_text, "Dimension vector 'd0; d_1, ...'")->required();
    dimq->add_flag("--unbound", unbound, "Ignore the commutativity relations");
    dimq->add_flag("--search-assignments", search, "Try every nesting-consistent placement of the entries");

    auto* stab = app.add_subcommand("stability", "Classify a representation for a weight");
    stab->add_option("rep", rep_path, "Representation file")->required();
    stab->add_option("-w,--weight", weight, "Weight 'chi0; chi_1, ...'");
    stab->add_option("--restarts", restarts, "Randomized search restarts")->capture_default_str();
    stab->add_flag("--flow-oracle", oracle, "Cross-check with the moment flow");
    stab->add_flag("--serial", serial, "Run the randomized search serially");

    auto* solve = app.add_subcommand("solve", "Moment flow to an orthoscalar representative");
    solve->add_option("rep", rep_path, "Representation file")->required();
    solve->add_option("-w,--weight", weight, "Weight 'chi0; chi_1, ...'");
    solve->add_option("--projections", projections_out, "Write the projection system here");
    solve->add_option("--report", report_out, "Write the flow report (JSON) here");

    auto* inv = app.add_subcommand("invariants", "Trace invariants of a projection system");
    inv->add_option("projections", rep_path, "Projection file")->required();
    inv->add_option("--max-len", max_len, "Longest word")->capture_default_str();
    inv->add_flag("--hopf", hopf, "Also print the Hopf normal form");

    auto* sweep = app.add_subcommand("fourspace-sweep", "Flow over a grid of four-subspace parameters");
    sweep->add_option("--grid", grid, "Values of lambda, e.g. '2, -1, 0.5, 3+4i, inf'");
    sweep->add_option("-w,--weight", sweep_weight, "Weight")->capture_default_str();
    sweep->add_flag("--serial", serial, "Evaluate grid points serially");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*hasse) return cmd_hasse(g, poset_path);
        if (*kleiner) return cmd_kleiner(g, poset_path);
        if (*euler) return cmd_euler(g, poset_path, d_text, e_text, unbound, cartan);
        if (*dimq) return cmd_dim_quotient(g, poset_path, d_text, unbound, search);
        if (*stab) return cmd_stability(g, rep_path, weight, restarts, oracle, serial);
        if (*solve) return cmd_solve(g, rep_path, weight, projections_out, report_out);
        if (*inv) return cmd_invariants(g, rep_path, max_len, hopf);
        if (*sweep) return cmd_fourspace_sweep(g, grid, sweep_weight, serial);
    } catch (const prl::NumericalBreakdown& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBreakdown;
    } catch (const prl::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}
