#pragma once

#include "prl/linrep.hpp"
#include "prl/poset.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace testing {

inline std::vector<std::string> names(std::size_t n, const std::string& prefix = "p") {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

// Random poset: closure of random pairs i < j in index order.
inline prl::Poset random_poset(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::vector<prl::CoverPair> pairs;
    const auto ids = names(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng)) pairs.emplace_back(ids[i], ids[j]);
        }
    }
    return prl::build_poset(ids, pairs);
}

// Every labeled strict partial order on n elements.
inline std::vector<prl::Poset> all_posets(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) slots.emplace_back(i, j);
        }
    }
    std::vector<prl::Poset> out;
    const std::uint64_t total = 1ULL << slots.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<std::uint8_t> rel(n * n, 0);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (mask >> s & 1U) rel[slots[s].first * n + slots[s].second] = 1;
        }
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (!rel[i * n + j]) continue;
                if (rel[j * n + i]) ok = false;
                for (std::size_t k = 0; k < n && ok; ++k) {
                    if (rel[j * n + k] && !rel[i * n + k]) ok = false;
                }
            }
        }
        if (ok) out.push_back(prl::Poset::from_relation(names(n), rel));
    }
    return out;
}

// Some injective map from c into p preserves and reflects the order.
inline bool embeds(const prl::Poset& c, const prl::Poset& p) {
    const std::size_t k = c.size();
    const std::size_t n = p.size();
    if (k > n) return false;
    // enumerate all ordered k-tuples of distinct elements
    std::vector<std::size_t> pick(k, 0);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == k) {
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t b = 0; b < k; ++b) {
                    if (c.less(a, b) != p.less(pick[a], pick[b])) return false;
                }
            }
            return true;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            pick[depth] = v;
            const bool found = rec(depth + 1);
            used[v] = false;
            if (found) return true;
        }
        return false;
    };
    return rec(0);
}

inline prl::linalg::Matrix column(std::initializer_list<prl::linalg::Complex> entries) {
    prl::linalg::Matrix m(static_cast<Eigen::Index>(entries.size()), 1);
    Eigen::Index r = 0;
    for (auto z : entries) m(r++, 0) = z;
    return m;
}

// Random rep of p: nested subspaces built by adding random columns along
// a linear extension.
inline prl::SubspaceRep random_rep(const prl::Poset& p, Eigen::Index n, std::mt19937_64& rng) {
    std::vector<prl::linalg::Matrix> spans(p.size());
    for (std::size_t i : p.linear_extension()) {
        prl::linalg::Matrix below(n, 0);
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (!p.less(j, i)) continue;
            prl::linalg::Matrix next(n, below.cols() + spans[j].cols());
            next << below, spans[j];
            below = next;
        }
        below = prl::linalg::orthonormal_basis(below, 1e-9);
        const Eigen::Index room = n - below.cols();
        const Eigen::Index extra = room > 0 ? static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(room + 1)) : 0;
        prl::linalg::Matrix s(n, below.cols() + extra);
        s << below, prl::linalg::random_gaussian(n, extra, rng);
        spans[i] = s;
    }
    return prl::make_rep(p, n, spans);
}

}  // namespace testing
