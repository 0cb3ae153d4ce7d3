#include "prl/repro.hpp"

#include "prl/errors.hpp"

#include <algorithm>
#include <numeric>

namespace prl {

namespace {

std::vector<std::size_t> components(const Poset& p) {
    std::vector<std::size_t> label(p.size());
    std::iota(label.begin(), label.end(), 0);
    auto find = [&](std::size_t x) {
        while (label[x] != x) x = label[x] = label[label[x]];
        return x;
    };
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p.less(i, j)) label[find(i)] = find(j);
        }
    }
    for (std::size_t i = 0; i < p.size(); ++i) label[i] = find(i);
    return label;
}

bool nesting_ok(const Poset& p, const std::vector<std::int64_t>& dims) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p.less(i, j) && dims[i] > dims[j]) return false;
        }
    }
    return true;
}

}  // namespace

AssignmentSearch search_assignments(const Poset& p, const DimVector& d, std::int64_t target) {
    if (d.elements.size() != p.size()) throw DimensionMismatch("dimension vector does not match the poset");
    const Quiver q = hasse_quiver(p);
    const BoundQuiver bq = commutativity_ideal(q);
    const auto comp = components(p);

    auto evaluate = [&](std::vector<std::int64_t> dims) {
        Assignment a;
        a.dims = std::move(dims);
        const DimVector v{d.root, a.dims};
        a.bound = quotient_dim_lower_bound(bq, v);
        a.euler_value = 1 - euler_form(bq, v, v);
        a.block_respecting = true;
        for (std::size_t c = 0; c < p.size() && a.block_respecting; ++c) {
            std::vector<std::int64_t> want;
            std::vector<std::int64_t> got;
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (comp[i] != c) continue;
                want.push_back(d.elements[i]);
                got.push_back(a.dims[i]);
            }
            std::sort(want.begin(), want.end());
            std::sort(got.begin(), got.end());
            a.block_respecting = want == got;
        }
        return a;
    };

    AssignmentSearch out;
    out.target = target;
    out.literal = evaluate(d.elements);
    out.literal_consistent = nesting_ok(p, d.elements) &&
                             std::all_of(d.elements.begin(), d.elements.end(), [&](auto v) { return v <= d.root; });

    std::vector<std::int64_t> perm = d.elements;
    std::sort(perm.begin(), perm.end());
    if (!perm.empty() && perm.back() > d.root) return out;
    do {
        if (!nesting_ok(p, perm)) continue;
        out.consistent.push_back(evaluate(perm));
        if (out.consistent.back().bound.value == target) out.any_hits_target = true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace prl
