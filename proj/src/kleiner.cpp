#include "prl/poset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace prl {

namespace {

Poset n4_poset() {
    std::vector<std::string> names;
    for (int k = 1; k <= 8; ++k) names.push_back("a" + std::to_string(k));
    const std::vector<CoverPair> covers = {
        {"a1", "a2"}, {"a3", "a2"}, {"a3", "a4"},  // the N
        {"a5", "a6"}, {"a6", "a7"}, {"a7", "a8"},  // chain of order 4
    };
    return build_poset(std::move(names), covers);
}

// Number of elements comparable to i (excluding i).
std::vector<std::size_t> comparability_degrees(const Poset& p) {
    std::vector<std::size_t> deg(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i != j && p.comparable(i, j)) ++deg[i];
        }
    }
    return deg;
}

// Enumerates injective maps of `pattern` into `host` that preserve and
// reflect the strict order; each distinct image set is reported once.
class EmbeddingSearch {
public:
    EmbeddingSearch(const Poset& pattern, const Poset& host)
        : pattern_(pattern), host_(host), pdeg_(comparability_degrees(pattern)), hdeg_(comparability_degrees(host)) {
        order_.resize(pattern.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        // most constrained pattern elements first
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return pdeg_[a] > pdeg_[b]; });
        image_.assign(pattern.size(), 0);
        used_.assign(host.size(), false);
    }

    std::map<std::vector<std::size_t>, std::vector<std::size_t>> run() {
        if (pattern_.size() <= host_.size()) extend(0);
        return found_;
    }

private:
    void extend(std::size_t depth) {
        if (depth == order_.size()) {
            std::vector<std::size_t> key(image_);
            std::sort(key.begin(), key.end());
            found_.try_emplace(std::move(key), image_);
            return;
        }
        const std::size_t c = order_[depth];
        for (std::size_t h = 0; h < host_.size(); ++h) {
            if (used_[h] || hdeg_[h] < pdeg_[c]) continue;
            bool ok = true;
            for (std::size_t k = 0; k < depth && ok; ++k) {
                const std::size_t c2 = order_[k];
                const std::size_t h2 = image_[c2];
                ok = pattern_.less(c, c2) == host_.less(h, h2) && pattern_.less(c2, c) == host_.less(h2, h);
            }
            if (!ok) continue;
            used_[h] = true;
            image_[c] = h;
            extend(depth + 1);
            used_[h] = false;
        }
    }

    const Poset& pattern_;
    const Poset& host_;
    std::vector<std::size_t> pdeg_, hdeg_, order_, image_;
    std::vector<bool> used_;
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> found_;
};

}  // namespace

const std::vector<std::pair<std::string, Poset>>& critical_posets() {
    static const std::vector<std::pair<std::string, Poset>> list = {
        {"(1,1,1,1)", primitive_poset({1, 1, 1, 1})},
        {"(2,2,2)", primitive_poset({2, 2, 2})},
        {"(1,3,3)", primitive_poset({1, 3, 3})},
        {"(1,2,5)", primitive_poset({1, 2, 5})},
        {"(N,4)", n4_poset()},
    };
    return list;
}

FinitenessReport is_representation_finite(const Poset& p) {
    FinitenessReport report;
    for (const auto& [name, critical] : critical_posets()) {
        for (const auto& [subset, image] : EmbeddingSearch(critical, p).run()) {
            CriticalWitness w;
            w.critical = name;
            for (std::size_t h : image) w.elements.push_back(p.element(h));
            report.witnesses.push_back(std::move(w));
        }
    }
    report.finite = report.witnesses.empty();
    return report;
}

}  // namespace prl
