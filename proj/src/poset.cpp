#include "prl/poset.hpp"

#include "prl/errors.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace prl {

Poset Poset::from_relation(std::vector<std::string> elements, std::vector<std::uint8_t> strict_order) {
    const std::size_t n = elements.size();
    if (strict_order.size() != n * n) throw Error("relation matrix has wrong size");
    std::unordered_set<std::string> seen;
    for (const auto& e : elements) {
        if (!seen.insert(e).second) throw DuplicateElement("duplicate element '" + e + "'");
    }
    auto rel = [&](std::size_t i, std::size_t j) { return strict_order[i * n + j] != 0; };
    for (std::size_t i = 0; i < n; ++i) {
        if (rel(i, i)) throw CycleError("element '" + elements[i] + "' would precede itself");
        for (std::size_t j = 0; j < n; ++j) {
            if (rel(i, j) && rel(j, i)) {
                throw CycleError("'" + elements[i] + "' and '" + elements[j] + "' precede each other");
            }
            if (!rel(i, j)) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (rel(j, k) && !rel(i, k)) throw Error("relation is not transitive");
            }
        }
    }
    for (auto& v : strict_order) v = v ? 1 : 0;
    return Poset(std::move(elements), std::move(strict_order));
}

std::optional<std::size_t> Poset::index_of(std::string_view id) const {
    auto it = std::find(elements_.begin(), elements_.end(), id);
    if (it == elements_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t Poset::require_index(std::string_view id) const {
    if (auto i = index_of(id)) return *i;
    throw UnknownElement("unknown element '" + std::string(id) + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!less(i, j)) continue;
            bool between = false;
            for (std::size_t k = 0; k < n && !between; ++k) between = less(i, k) && less(k, j);
            if (!between) out.emplace_back(i, j);
        }
    }
    return out;
}

std::vector<std::size_t> Poset::maximal_elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < size() && maximal; ++j) maximal = !less(i, j);
        if (maximal) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> Poset::linear_extension() const {
    const std::size_t n = size();
    std::vector<std::size_t> out;
    std::vector<bool> placed(n, false);
    out.reserve(n);
    while (out.size() < n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (placed[i]) continue;
            bool ready = true;
            for (std::size_t j = 0; j < n && ready; ++j) ready = placed[j] || !less(j, i);
            if (ready) {
                placed[i] = true;
                out.push_back(i);
                break;
            }
        }
    }
    return out;
}

Poset Poset::induced(std::span<const std::size_t> subset) const {
    const std::size_t m = subset.size();
    std::vector<std::string> names;
    std::vector<std::uint8_t> order(m * m, 0);
    names.reserve(m);
    for (std::size_t a = 0; a < m; ++a) {
        names.push_back(elements_.at(subset[a]));
        for (std::size_t b = 0; b < m; ++b) order[a * m + b] = less(subset[a], subset[b]) ? 1 : 0;
    }
    return Poset(std::move(names), std::move(order));
}

bool operator==(const Poset& a, const Poset& b) {
    if (a.size() != b.size()) return false;
    std::vector<std::size_t> map(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto j = b.index_of(a.elements_[i]);
        if (!j) return false;
        map[i] = *j;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a.less(i, j) != b.less(map[i], map[j])) return false;
        }
    }
    return true;
}

Poset build_poset(std::vector<std::string> elements, std::span<const CoverPair> covers) {
    const std::size_t n = elements.size();
    std::unordered_set<std::string> seen;
    for (const auto& e : elements) {
        if (!seen.insert(e).second) throw DuplicateElement("duplicate element '" + e + "'");
    }
    auto index = [&](const std::string& id) -> std::size_t {
        auto it = std::find(elements.begin(), elements.end(), id);
        if (it == elements.end()) throw UnknownElement("cover references unknown element '" + id + "'");
        return static_cast<std::size_t>(it - elements.begin());
    };
    std::vector<std::uint8_t> order(n * n, 0);
    for (const auto& [lo, hi] : covers) order[index(lo) * n + index(hi)] = 1;
    // Warshall closure
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!order[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (order[k * n + j]) order[i * n + j] = 1;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (order[i * n + i]) throw CycleError("covers force '" + elements[i] + "' < '" + elements[i] + "'");
    }
    return Poset::from_relation(std::move(elements), std::move(order));
}

Poset primitive_poset(std::span<const int> chain_orders) {
    std::vector<std::string> names;
    std::vector<CoverPair> covers;
    std::size_t next = 1;
    for (int len : chain_orders) {
        if (len <= 0) throw Error("chain orders must be positive");
        for (int k = 0; k < len; ++k) {
            names.push_back("a" + std::to_string(next));
            if (k > 0) covers.emplace_back("a" + std::to_string(next - 1), names.back());
            ++next;
        }
    }
    return build_poset(std::move(names), covers);
}

Poset primitive_poset(std::initializer_list<int> chain_orders) {
    return primitive_poset(std::span<const int>(chain_orders.begin(), chain_orders.size()));
}

Quiver Quiver::make(std::vector<std::string> vertices, std::vector<Arrow> arrows, std::optional<std::size_t> root) {
    std::unordered_set<std::string> seen;
    for (const auto& v : vertices) {
        if (!seen.insert(v).second) throw DuplicateElement("duplicate vertex '" + v + "'");
    }
    for (const auto& a : arrows) {
        if (a.source >= vertices.size() || a.target >= vertices.size()) throw Error("arrow endpoint out of range");
        if (a.source >= a.target) {
            throw CycleError("arrow " + vertices[a.source] + " -> " + vertices[a.target] +
                             " violates the topological vertex order");
        }
    }
    if (root && *root >= vertices.size()) throw Error("root out of range");
    Quiver q;
    q.vertices_ = std::move(vertices);
    q.arrows_ = std::move(arrows);
    q.root_ = root;
    return q;
}

std::optional<std::size_t> Quiver::index_of(std::string_view name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t Quiver::out_degree(std::size_t v) const {
    return static_cast<std::size_t>(
        std::count_if(arrows_.begin(), arrows_.end(), [v](const Arrow& a) { return a.source == v; }));
}

std::size_t Quiver::in_degree(std::size_t v) const {
    return static_cast<std::size_t>(
        std::count_if(arrows_.begin(), arrows_.end(), [v](const Arrow& a) { return a.target == v; }));
}

std::vector<std::uint8_t> Quiver::reachability() const {
    const std::size_t n = vertex_count();
    std::vector<std::uint8_t> reach(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) reach[i * n + i] = 1;
    // arrows go forward in index order, so one backward sweep suffices
    for (std::size_t i = n; i-- > 0;) {
        for (const auto& a : arrows_) {
            if (a.source != i) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[a.target * n + j]) reach[i * n + j] = 1;
            }
        }
    }
    return reach;
}

Quiver hasse_quiver(const Poset& p) {
    const auto ext = p.linear_extension();
    std::vector<std::size_t> vertex_of(p.size());
    std::vector<std::string> names;
    names.reserve(p.size() + 1);
    for (std::size_t k = 0; k < ext.size(); ++k) {
        vertex_of[ext[k]] = k;
        names.push_back(p.element(ext[k]));
    }
    names.emplace_back(kRootName);
    const std::size_t root = p.size();

    std::vector<Arrow> arrows;
    for (const auto& [lo, hi] : p.covers()) arrows.push_back({vertex_of[lo], vertex_of[hi]});
    for (std::size_t m : p.maximal_elements()) arrows.push_back({vertex_of[m], root});
    std::sort(arrows.begin(), arrows.end(),
              [](const Arrow& a, const Arrow& b) { return std::tie(a.source, a.target) < std::tie(b.source, b.target); });

    Quiver q = Quiver::make(std::move(names), std::move(arrows), root);
    q.element_vertex_ = std::move(vertex_of);
    q.poset_derived_ = true;
    return q;
}

PrimitiveProfile is_primitive(const Poset& p) {
    const std::size_t n = p.size();
    std::vector<int> up(n, 0), down(n, 0);
    std::vector<std::size_t> next(n, n);
    for (const auto& [lo, hi] : p.covers()) {
        ++up[lo];
        ++down[hi];
        next[lo] = hi;
    }
    PrimitiveProfile out;
    for (std::size_t i = 0; i < n; ++i) {
        if (up[i] > 1 || down[i] > 1) return out;
    }
    out.primitive = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (down[i] != 0) continue;
        std::size_t len = 1;
        for (std::size_t k = i; next[k] != n; k = next[k]) ++len;
        out.chains.push_back(len);
    }
    std::sort(out.chains.begin(), out.chains.end());
    return out;
}

}  // namespace prl
