#include "prl/stability.hpp"

#include "prl/errors.hpp"

#include <algorithm>
#include <random>

namespace prl {

using linalg::Matrix;

std::string_view to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::stable: return "stable";
        case StabilityClass::polystable_not_stable: return "polystable_not_stable";
        case StabilityClass::semistable_not_polystable: return "semistable_not_polystable";
        case StabilityClass::unstable: return "unstable";
    }
    return "unknown";
}

std::vector<Matrix> subspace_lattice(const SubspaceRep& rep, std::size_t cap, double tol) {
    const Eigen::Index n = rep.ambient_dim();
    std::vector<Matrix> elems;
    auto add = [&](const Matrix& m) {
        for (const auto& e : elems) {
            if (linalg::same_subspace(e, m, tol)) return;
        }
        if (elems.size() >= cap) {
            throw LatticeTooLarge("subspace lattice exceeds " + std::to_string(cap) + " elements");
        }
        elems.push_back(m);
    };
    add(Matrix(n, 0));
    add(Matrix::Identity(n, n));
    for (const auto& b : rep.bases()) add(b);
    for (std::size_t k = 0; k < elems.size(); ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            const Matrix a = elems[j];
            const Matrix b = elems[k];
            add(linalg::subspace_sum(a, b, tol));
            add(linalg::subspace_intersection(a, b, tol));
        }
    }
    return elems;
}

Rational stability_functional(const SubspaceRep& rep, const Weight& w, const Matrix& k, double tol) {
    const Rational sigma = w.slope(rep.dim_vector());
    Rational acc(0);
    for (std::size_t i = 0; i < rep.bases().size(); ++i) {
        acc += w.chi()[i] * linalg::intersection_dim(rep.basis(i), k, tol);
    }
    return acc - sigma * k.cols();
}

namespace {

Matrix improve(const SubspaceRep& rep, Matrix k, double tol) {
    for (;;) {
        Eigen::Index cols = 0;
        std::vector<Matrix> parts;
        for (const auto& b : rep.bases()) {
            parts.push_back(linalg::subspace_intersection(b, k, tol));
            cols += parts.back().cols();
        }
        Matrix stacked(rep.ambient_dim(), cols);
        Eigen::Index at = 0;
        for (const auto& p : parts) {
            stacked.middleCols(at, p.cols()) = p;
            at += p.cols();
        }
        Matrix next = linalg::orthonormal_basis(stacked, tol);
        if (next.cols() == 0 || next.cols() == k.cols()) return k;
        k = std::move(next);
    }
}

DestabilizerResult run_restart(const SubspaceRep& rep, const Weight& w, int r, std::uint64_t seed, double tol) {
    DestabilizerResult out;
    const Eigen::Index n = rep.ambient_dim();
    if (n < 2) return out;
    std::mt19937_64 rng(linalg::derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < rep.bases().size(); ++i) {
        if (rep.dim(i) > 0) nonzero.push_back(i);
    }
    const auto pieces = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n - 1));
    std::vector<Matrix> chosen;
    Eigen::Index cols = 0;
    for (Eigen::Index p = 0; p < pieces; ++p) {
        if (!nonzero.empty() && rng() % 4 != 0) {
            const std::size_t i = nonzero[rng() % nonzero.size()];
            const auto m = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(rep.dim(i)));
            chosen.push_back(rep.basis(i) * linalg::random_gaussian(rep.dim(i), m, rng));
        } else {
            chosen.push_back(linalg::random_gaussian(n, 1, rng));
        }
        cols += chosen.back().cols();
    }
    Matrix stacked(n, cols);
    Eigen::Index at = 0;
    for (const auto& c : chosen) {
        stacked.middleCols(at, c.cols()) = c;
        at += c.cols();
    }
    Matrix k = linalg::orthonormal_basis(stacked, tol);
    if (k.cols() == 0 || k.cols() == n) return out;
    k = improve(rep, std::move(k), tol);
    out.value = stability_functional(rep, w, k, tol);
    out.witness = std::move(k);
    out.restart = r;
    return out;
}

DestabilizerResult reduce(std::vector<DestabilizerResult>& results) {
    DestabilizerResult best;
    for (auto& r : results) {
        if (!r.value) continue;
        if (!best.value || *r.value > *best.value) best = std::move(r);
    }
    return best;
}

// Lattice elements plus a generic line inside and a generic hyperplane
// around each of them.
std::vector<Matrix> augmented_family(const std::vector<Matrix>& lattice, Eigen::Index n, std::uint64_t seed,
                                     double tol) {
    std::vector<Matrix> family = lattice;
    std::mt19937_64 rng(linalg::derive_seed(seed, 0x5eed0000ULL));
    for (const auto& l : lattice) {
        if (l.cols() >= 2) family.push_back(linalg::orthonormal_basis(l * linalg::random_gaussian(l.cols(), 1, rng), tol));
        if (l.cols() <= n - 2) {
            Matrix h(n, n - 1);
            h << l, linalg::random_gaussian(n, n - 1 - l.cols(), rng);
            family.push_back(linalg::orthonormal_basis(h, tol));
        }
    }
    return family;
}

}  // namespace

DestabilizerResult randomized_destabilizer_search(const SubspaceRep& rep, const Weight& w, int restarts,
                                                  std::uint64_t seed, double tol) {
    std::vector<DestabilizerResult> results(static_cast<std::size_t>(std::max(restarts, 0)));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < restarts; ++r) results[static_cast<std::size_t>(r)] = run_restart(rep, w, r, seed, tol);
    return reduce(results);
}

DestabilizerResult randomized_destabilizer_search_serial(const SubspaceRep& rep, const Weight& w, int restarts,
                                                         std::uint64_t seed, double tol) {
    std::vector<DestabilizerResult> results;
    for (int r = 0; r < restarts; ++r) results.push_back(run_restart(rep, w, r, seed, tol));
    return reduce(results);
}

StabilityVerdict stability_check(const SubspaceRep& rep, const Weight& w, const StabilityOptions& opts) {
    StabilityVerdict v;
    const DimVector d = rep.dim_vector();
    v.slope = w.slope(d);
    v.trace_identity = w.trace_identity(d);
    const Eigen::Index n = rep.ambient_dim();
    if (n == 0) {
        v.cls = StabilityClass::polystable_not_stable;
        v.notes.emplace_back("zero representation: empty direct sum");
        return v;
    }

    std::optional<Rational> best;
    Matrix best_k;
    if (n >= 2) {
        try {
            const auto lattice = subspace_lattice(rep, opts.lattice_cap, opts.tol);
            v.methods.lattice_exact = true;
            v.lattice_size = lattice.size();
            for (const auto& k : augmented_family(lattice, n, opts.seed, opts.tol)) {
                if (k.cols() == 0 || k.cols() == n) continue;
                const Rational f = stability_functional(rep, w, k, opts.tol);
                if (!best || f > *best) {
                    best = f;
                    best_k = k;
                }
            }
            v.lattice_max = best;
        } catch (const LatticeTooLarge& e) {
            v.notes.emplace_back(e.what());
        }
        if (opts.restarts > 0) {
            const auto res = opts.parallel
                                 ? randomized_destabilizer_search(rep, w, opts.restarts, opts.seed, opts.tol)
                                 : randomized_destabilizer_search_serial(rep, w, opts.restarts, opts.seed, opts.tol);
            v.methods.randomized = true;
            v.randomized_max = res.value;
            if (res.value && v.lattice_max && *res.value > *v.lattice_max) {
                v.inconclusive = true;
                v.notes.emplace_back("randomized search beat the lattice maximum");
            }
            if (res.value && (!best || *res.value > *best)) {
                best = res.value;
                best_k = res.witness;
            }
        }
        if (!best) {
            v.inconclusive = true;
            v.notes.emplace_back("no proper subspace was examined");
        }
    }

    if (best) {
        v.witness_value = *best;
        for (double scale : {10.0, 0.1}) {
            const double t = opts.tol * scale;
            DimVector dt;
            dt.root = n;
            for (const auto& s : rep.spans()) dt.elements.push_back(linalg::numerical_rank(s, t));
            if (dt != d || stability_functional(rep, w, best_k, t) != *best) v.rank_unstable = true;
        }
        if (v.rank_unstable) v.notes.emplace_back("ranks change under a 10x tolerance change");
    }

    if (!best || *best < 0) {
        v.cls = StabilityClass::stable;
    } else if (*best > 0) {
        v.cls = StabilityClass::unstable;
    } else {
        const auto parts = decompose(rep, opts.seed);
        bool poly = parts.size() > 1;
        StabilityOptions sub = opts;
        sub.flow_oracle = nullptr;
        for (const auto& p : parts) {
            const DimVector pd = p.dim_vector();
            v.summands.push_back(pd);
            if (!poly) continue;
            if (w.slope(pd) != v.slope || stability_check(p, w, sub).cls != StabilityClass::stable) poly = false;
        }
        v.cls = poly ? StabilityClass::polystable_not_stable : StabilityClass::semistable_not_polystable;
    }
    if (v.cls != StabilityClass::stable && best) v.witness = best_k;

    if (opts.flow_oracle) {
        if (v.slope > 0) {
            v.oracle = opts.flow_oracle(rep, w.slope_normalized(d));
            v.methods.flow_oracle = true;
            const bool expect = v.cls == StabilityClass::stable || v.cls == StabilityClass::polystable_not_stable;
            if (v.oracle->converged != expect) {
                v.inconclusive = true;
                v.notes.emplace_back("flow oracle disagrees with the subspace search");
            }
        } else {
            v.notes.emplace_back("flow oracle skipped: slope is zero");
        }
    }
    return v;
}

}  // namespace prl
