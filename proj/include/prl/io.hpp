#pragma once

#include "prl/bound_quiver.hpp"
#include "prl/fourspace.hpp"
#include "prl/linrep.hpp"
#include "prl/moment.hpp"
#include "prl/stability.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace prl::io {

// Poset text: `elem <id>` and `cover <id> < <id>` lines, `#` comments.
Poset parse_poset(std::string_view text);
/// Elements sorted, then covers sorted.
std::string format_poset(const Poset& p);

// Complex numbers as `re+imj`; shortest round-trip decimal digits.
linalg::Complex parse_complex(std::string_view text);
std::string format_complex(linalg::Complex z);

/// `inf` or a complex number; `i` is accepted in place of `j`.
std::optional<linalg::Complex> parse_lambda(std::string_view text);
std::string format_lambda(const std::optional<linalg::Complex>& lambda);
/// Comma- or whitespace-separated list of lambda values.
std::vector<std::optional<linalg::Complex>> parse_lambda_grid(std::string_view text);

// `chi0; chi_1, chi_2, ...` with rational entries.
Weight parse_weight(std::string_view text);
std::string format_weight(const Weight& w);
// `d0; d_1, d_2, ...`.
DimVector parse_dim_vector(std::string_view text);
std::string format_dim_vector(const DimVector& d);

using PosetLoader = std::function<Poset(const std::string& path)>;

/// Reads a poset file relative to `base`.
PosetLoader file_loader(std::filesystem::path base);

struct RepFile {
    std::string poset_path;
    SubspaceRep rep;
    std::optional<Weight> weight;
};

// poset <path> / ambient <d0> / [weight <w>] / span <id> <cols> + d0 rows.
RepFile parse_rep(std::string_view text, const PosetLoader& load, double tol = kDefaultRankTol);
std::string format_rep(const RepFile& f);

struct ProjectionFile {
    std::string poset_path;
    ProjectionSystem system;
};

// poset <path> / ambient <d0> / weight <w> / projection <id> <rank> + d0 rows.
ProjectionFile parse_projections(std::string_view text, const PosetLoader& load);
std::string format_projections(const ProjectionFile& f);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

nlohmann::json matrix_json(const linalg::Matrix& m);
nlohmann::json flow_report_json(const FlowReport& r);
nlohmann::json verdict_json(const StabilityVerdict& v);
nlohmann::json orthoscalar_json(const OrthoscalarReport& r);

/// Fixed CSV header and one line per row.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace prl::io
