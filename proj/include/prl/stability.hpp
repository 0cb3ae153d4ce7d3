#pragma once

#include "prl/linrep.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prl {

enum class StabilityClass { stable, polystable_not_stable, semistable_not_polystable, unstable };

std::string_view to_string(StabilityClass c);

struct MethodFlags {
    bool lattice_exact = false;
    bool randomized = false;
    bool flow_oracle = false;
};

/// Outcome of an external polystability certificate (the moment flow).
struct OracleOutcome {
    bool converged = false;
    double residual = 0.0;
    double condition = 1.0;
    std::string status;
};

using FlowOracle = std::function<OracleOutcome(const SubspaceRep&, const Weight&)>;

struct StabilityOptions {
    /// Relative rank tolerance for every dimension count.
    double tol = kDefaultRankTol;
    int restarts = 200;
    std::uint64_t seed = 0;
    std::size_t lattice_cap = 512;
    bool parallel = true;
    /// Called with the slope-normalized weight when set.
    FlowOracle flow_oracle;
};

struct StabilityVerdict {
    StabilityClass cls = StabilityClass::stable;
    /// Orthonormal basis of a maximizer of f when cls != stable.
    std::optional<linalg::Matrix> witness;
    /// f(witness); the maximum of f over the searched family.
    Rational witness_value{0};
    Rational slope{0};
    bool trace_identity = false;
    MethodFlags methods;
    bool inconclusive = false;
    /// A verdict-relevant rank changed at 10x or 0.1x the tolerance.
    bool rank_unstable = false;
    std::size_t lattice_size = 0;
    std::optional<Rational> lattice_max;
    std::optional<Rational> randomized_max;
    /// Dimension vectors of the summands examined for polystability.
    std::vector<DimVector> summands;
    std::optional<OracleOutcome> oracle;
    std::vector<std::string> notes;
};

/// Closure of {0, V, V_i} under sum and intersection. Throws
/// LatticeTooLarge when more than `cap` distinct subspaces appear.
std::vector<linalg::Matrix> subspace_lattice(const SubspaceRep& rep, std::size_t cap = 512,
                                             double tol = kDefaultRankTol);

/// f(K) = sum chi_i dim(V_i n K) - sigma dim K, sigma the slope of rep.
Rational stability_functional(const SubspaceRep& rep, const Weight& w, const linalg::Matrix& k, double tol);

struct DestabilizerResult {
    std::optional<Rational> value;  // empty when no proper nonzero K was produced
    linalg::Matrix witness;
    int restart = -1;
};

/// Random sums of subspaces of the V_i improved by K <- sum (V_i n K).
/// Best value wins, ties go to the lowest restart index.
DestabilizerResult randomized_destabilizer_search(const SubspaceRep& rep, const Weight& w, int restarts,
                                                  std::uint64_t seed, double tol);
/// Serial reference of the above; identical results.
DestabilizerResult randomized_destabilizer_search_serial(const SubspaceRep& rep, const Weight& w, int restarts,
                                                         std::uint64_t seed, double tol);

StabilityVerdict stability_check(const SubspaceRep& rep, const Weight& w, const StabilityOptions& opts = {});

}  // namespace prl
