#include "prl/io.hpp"

#include "prl/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace prl::io {

using linalg::Complex;
using linalg::Matrix;

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

struct Line {
    std::size_t number;
    std::string_view text;
};

// Non-empty lines with comments removed.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        ++number;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) out.push_back({number, line});
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto start = s.find_first_not_of(" \t", pos);
        if (start == std::string_view::npos) break;
        const auto end = s.find_first_of(" \t", start);
        out.push_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) break;
        pos = end;
    }
    return out;
}

std::vector<std::string_view> split_any(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const auto end = s.find_first_of(seps, pos);
        out.push_back(trim(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos)));
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return out;
}

double parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw ParseError(0, "invalid number '" + std::string(s) + "'");
    }
    return value;
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
    s = trim(s);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(line, "invalid integer '" + std::string(s) + "'");
    }
    return value;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// Rethrows a ParseError without line information at `line`.
template <class F>
auto at_line(std::size_t line, F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        if (e.line() != 0) throw;
        throw ParseError(line, e.what());
    }
}

std::vector<Matrix::Scalar> parse_row(std::string_view text, std::size_t line, Eigen::Index cols) {
    const auto parts = split_any(text, ",");
    if (static_cast<Eigen::Index>(parts.size()) != cols) {
        throw ParseError(line, "expected " + std::to_string(cols) + " entries, found " + std::to_string(parts.size()));
    }
    std::vector<Matrix::Scalar> out;
    for (auto p : parts) out.push_back(at_line(line, [&] { return parse_complex(p); }));
    return out;
}

void append_matrix(std::ostringstream& out, const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out << ", ";
            out << format_complex(m(r, c));
        }
        if (m.cols() > 0) out << '\n';
    }
}

struct Header {
    std::string poset_path;
    Poset poset;
    bool have_poset = false;
    std::optional<Eigen::Index> ambient;
    std::optional<Weight> weight;
};

// Handles the lines shared by rep and projection files; returns false for
// any other keyword.
bool header_line(Header& h, const std::vector<std::string_view>& tok, const Line& line, const PosetLoader& load) {
    if (tok[0] == "poset") {
        if (tok.size() != 2) throw ParseError(line.number, "expected 'poset <path>'");
        h.poset_path = std::string(tok[1]);
        h.poset = at_line(line.number, [&] { return load(h.poset_path); });
        h.have_poset = true;
        return true;
    }
    if (tok[0] == "ambient") {
        if (tok.size() != 2) throw ParseError(line.number, "expected 'ambient <dimension>'");
        const auto n = parse_int(tok[1], line.number);
        if (n < 0) throw ParseError(line.number, "negative ambient dimension");
        h.ambient = n;
        return true;
    }
    if (tok[0] == "weight") {
        const auto rest = trim(line.text.substr(6));
        h.weight = at_line(line.number, [&] { return parse_weight(rest); });
        return true;
    }
    return false;
}

// Reads a block header `<keyword> <id> <count>` and the rows that follow.
struct Block {
    std::size_t element;
    Matrix data;
};

Block read_block(const Header& h, const std::vector<Line>& lines, std::size_t& k, bool square) {
    const Line& line = lines[k];
    const auto tok = split_ws(line.text);
    if (!h.have_poset || !h.ambient) throw ParseError(line.number, "'poset' and 'ambient' must precede blocks");
    if (tok.size() != 3) throw ParseError(line.number, "expected '" + std::string(tok[0]) + " <id> <count>'");
    const auto idx = h.poset.index_of(tok[1]);
    if (!idx) throw ParseError(line.number, "unknown element '" + std::string(tok[1]) + "'");
    const auto count = parse_int(tok[2], line.number);
    if (count < 0 || count > *h.ambient) throw ParseError(line.number, "count out of range");
    const Eigen::Index rows = *h.ambient;
    const Eigen::Index cols = square ? rows : count;
    Block b{*idx, Matrix(rows, cols)};
    if (cols == 0) return b;
    for (Eigen::Index r = 0; r < rows; ++r) {
        ++k;
        if (k >= lines.size()) throw ParseError(line.number, "block ends early");
        const auto entries = parse_row(lines[k].text, lines[k].number, cols);
        for (Eigen::Index c = 0; c < cols; ++c) b.data(r, c) = entries[static_cast<std::size_t>(c)];
    }
    return b;
}

}  // namespace

Poset parse_poset(std::string_view text) {
    std::vector<std::string> elements;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::vector<std::pair<CoverPair, std::size_t>> covers;
    for (const auto& line : content_lines(text)) {
        const auto tok = split_ws(line.text);
        if (tok[0] == "elem") {
            if (tok.size() != 2) throw ParseError(line.number, "expected 'elem <id>'");
            std::string id(tok[1]);
            if (seen.count(id)) throw ParseError(line.number, "duplicate element '" + id + "'");
            seen.emplace(id, line.number);
            elements.push_back(std::move(id));
        } else if (tok[0] == "cover") {
            const auto rest = line.text.substr(5);
            const auto lt = rest.find('<');
            if (lt == std::string_view::npos) throw ParseError(line.number, "expected 'cover <id> < <id>'");
            const auto lo = trim(rest.substr(0, lt));
            const auto hi = trim(rest.substr(lt + 1));
            if (lo.empty() || hi.empty() || split_ws(lo).size() != 1 || split_ws(hi).size() != 1) {
                throw ParseError(line.number, "expected 'cover <id> < <id>'");
            }
            covers.push_back({{std::string(lo), std::string(hi)}, line.number});
        } else {
            throw ParseError(line.number, "unknown keyword '" + std::string(tok[0]) + "'");
        }
    }
    std::vector<CoverPair> pairs;
    for (const auto& [c, number] : covers) {
        for (const auto* id : {&c.first, &c.second}) {
            if (!seen.count(*id)) throw ParseError(number, "unknown element '" + *id + "'");
        }
        pairs.push_back(c);
    }
    return build_poset(std::move(elements), pairs);
}

std::string format_poset(const Poset& p) {
    std::vector<std::string> ids = p.elements();
    std::sort(ids.begin(), ids.end());
    std::vector<CoverPair> covers;
    for (const auto& [i, j] : p.covers()) covers.emplace_back(p.element(i), p.element(j));
    std::sort(covers.begin(), covers.end());
    std::ostringstream out;
    for (const auto& id : ids) out << "elem " << id << '\n';
    for (const auto& [lo, hi] : covers) out << "cover " << lo << " < " << hi << '\n';
    return out.str();
}

Complex parse_complex(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw ParseError(0, "empty complex number");
    const char last = s.back();
    if (last != 'j' && last != 'i') return {parse_double(s), 0.0};
    s.remove_suffix(1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string_view re = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
    std::string_view im = split == std::string_view::npos ? s : s.substr(split);
    double imag = 0.0;
    if (im == "+" || im == "-" || im.empty()) {
        imag = im == "-" ? -1.0 : 1.0;
    } else {
        const bool negative = im.front() == '-';
        if (im.front() == '+' || im.front() == '-') im.remove_prefix(1);
        imag = parse_double(im);
        if (negative) imag = -imag;
    }
    return {re.empty() ? 0.0 : parse_double(re), imag};
}

std::string format_complex(Complex z) {
    std::string out = format_double(z.real());
    out += std::signbit(z.imag()) ? '-' : '+';
    out += format_double(std::abs(z.imag()));
    out += 'j';
    return out;
}

std::optional<Complex> parse_lambda(std::string_view text) {
    const auto s = trim(text);
    if (s == "inf" || s == "infinity") return std::nullopt;
    return parse_complex(s);
}

std::string format_lambda(const std::optional<Complex>& lambda) {
    if (!lambda) return "inf";
    if (lambda->imag() == 0.0 && !std::signbit(lambda->imag())) return format_double(lambda->real());
    return format_complex(*lambda);
}

std::vector<std::optional<Complex>> parse_lambda_grid(std::string_view text) {
    std::vector<std::optional<Complex>> out;
    for (auto part : split_any(text, ",")) {
        for (auto tok : split_ws(part)) out.push_back(parse_lambda(tok));
    }
    return out;
}

Weight parse_weight(std::string_view text) {
    const auto s = trim(text);
    const auto semi = s.find(';');
    if (semi == std::string_view::npos) throw ParseError(0, "weight must look like 'chi0; chi_1, chi_2, ...'");
    const Rational chi0 = parse_rational(trim(s.substr(0, semi)));
    std::vector<Rational> chi;
    const auto rest = trim(s.substr(semi + 1));
    if (!rest.empty()) {
        for (auto part : split_any(rest, ",;")) chi.push_back(parse_rational(part));
    }
    return Weight(chi0, std::move(chi));
}

std::string format_weight(const Weight& w) {
    std::string out = format_rational(w.chi0()) + ";";
    for (std::size_t i = 0; i < w.size(); ++i) out += (i == 0 ? " " : ", ") + format_rational(w.chi()[i]);
    return out;
}

DimVector parse_dim_vector(std::string_view text) {
    const auto s = trim(text);
    const auto semi = s.find(';');
    if (semi == std::string_view::npos) throw ParseError(0, "dimension vector must look like 'd0; d_1, d_2, ...'");
    DimVector d;
    d.root = parse_int(s.substr(0, semi), 0);
    const auto rest = trim(s.substr(semi + 1));
    if (!rest.empty()) {
        for (auto part : split_any(rest, ",;")) d.elements.push_back(parse_int(part, 0));
    }
    if (d.root < 0 || std::any_of(d.elements.begin(), d.elements.end(), [](auto v) { return v < 0; })) {
        throw ParseError(0, "dimension vector entries must be nonnegative");
    }
    return d;
}

std::string format_dim_vector(const DimVector& d) {
    std::string out = std::to_string(d.root) + ";";
    for (std::size_t i = 0; i < d.elements.size(); ++i) out += (i == 0 ? " " : ", ") + std::to_string(d.elements[i]);
    return out;
}

PosetLoader file_loader(std::filesystem::path base) {
    return [base = std::move(base)](const std::string& path) {
        std::filesystem::path p(path);
        if (p.is_relative()) p = base / p;
        return parse_poset(read_file(p));
    };
}

RepFile parse_rep(std::string_view text, const PosetLoader& load, double tol) {
    Header h;
    const auto lines = content_lines(text);
    std::vector<std::optional<Matrix>> spans;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto tok = split_ws(lines[k].text);
        if (header_line(h, tok, lines[k], load)) {
            if (tok[0] == "poset") spans.assign(h.poset.size(), std::nullopt);
            continue;
        }
        if (tok[0] != "span") throw ParseError(lines[k].number, "unknown keyword '" + std::string(tok[0]) + "'");
        const std::size_t header_number = lines[k].number;
        Block b = read_block(h, lines, k, false);
        if (spans[b.element]) throw ParseError(header_number, "second span for '" + h.poset.element(b.element) + "'");
        spans[b.element] = std::move(b.data);
    }
    if (!h.have_poset || !h.ambient) throw ParseError(0, "missing 'poset' or 'ambient' line");
    std::vector<Matrix> data;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        if (!spans[i]) throw ParseError(0, "no span given for element '" + h.poset.element(i) + "'");
        data.push_back(std::move(*spans[i]));
    }
    if (h.weight && h.weight->size() != h.poset.size()) throw ParseError(0, "weight does not match the poset");
    return RepFile{h.poset_path, make_rep(h.poset, *h.ambient, std::move(data), tol), h.weight};
}

std::string format_rep(const RepFile& f) {
    std::ostringstream out;
    out << "poset " << f.poset_path << '\n';
    out << "ambient " << f.rep.ambient_dim() << '\n';
    if (f.weight) out << "weight " << format_weight(*f.weight) << '\n';
    for (std::size_t i = 0; i < f.rep.poset().size(); ++i) {
        const Matrix& s = f.rep.spans()[i];
        out << "span " << f.rep.poset().element(i) << ' ' << s.cols() << '\n';
        append_matrix(out, s);
    }
    return out.str();
}

ProjectionFile parse_projections(std::string_view text, const PosetLoader& load) {
    Header h;
    const auto lines = content_lines(text);
    std::vector<std::optional<Block>> blocks;
    std::vector<Eigen::Index> ranks;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto tok = split_ws(lines[k].text);
        if (header_line(h, tok, lines[k], load)) {
            if (tok[0] == "poset") {
                blocks.assign(h.poset.size(), std::nullopt);
                ranks.assign(h.poset.size(), 0);
            }
            continue;
        }
        if (tok[0] != "projection") {
            throw ParseError(lines[k].number, "unknown keyword '" + std::string(tok[0]) + "'");
        }
        const std::size_t header_number = lines[k].number;
        const auto rank = tok.size() == 3 ? parse_int(tok[2], header_number) : 0;
        Block b = read_block(h, lines, k, true);
        if (blocks[b.element]) throw ParseError(header_number, "second projection for '" + h.poset.element(b.element) + "'");
        ranks[b.element] = rank;
        blocks[b.element] = std::move(b);
    }
    if (!h.have_poset || !h.ambient || !h.weight) throw ParseError(0, "missing 'poset', 'ambient' or 'weight' line");
    if (h.weight->size() != h.poset.size()) throw ParseError(0, "weight does not match the poset");
    ProjectionFile f;
    f.poset_path = h.poset_path;
    f.system.poset = h.poset;
    f.system.weight = *h.weight;
    f.system.ambient_dim = *h.ambient;
    f.system.ranks = ranks;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (!blocks[i]) throw ParseError(0, "no projection given for element '" + h.poset.element(i) + "'");
        f.system.projections.push_back(std::move(blocks[i]->data));
    }
    return f;
}

std::string format_projections(const ProjectionFile& f) {
    const ProjectionSystem& ps = f.system;
    std::ostringstream out;
    out << "poset " << f.poset_path << '\n';
    out << "ambient " << ps.ambient_dim << '\n';
    out << "weight " << format_weight(ps.weight) << '\n';
    for (std::size_t i = 0; i < ps.poset.size(); ++i) {
        out << "projection " << ps.poset.element(i) << ' ' << ps.ranks[i] << '\n';
        append_matrix(out, ps.projections[i]);
    }
    return out.str();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

nlohmann::json matrix_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(format_complex(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json flow_report_json(const FlowReport& r) {
    return {
        {"status", std::string(to_string(r.status))},
        {"residual", r.residual},
        {"iterations", r.iterations},
        {"condition", r.condition},
        {"final_step", r.final_step},
        {"final_metric", matrix_json(r.final_metric)},
        {"history", r.history},
    };
}

nlohmann::json verdict_json(const StabilityVerdict& v) {
    auto opt_rational = [](const std::optional<Rational>& x) -> nlohmann::json {
        return x ? nlohmann::json(format_rational(*x)) : nlohmann::json(nullptr);
    };
    nlohmann::json summands = nlohmann::json::array();
    for (const auto& d : v.summands) summands.push_back(format_dim_vector(d));
    nlohmann::json j = {
        {"class", std::string(to_string(v.cls))},
        {"slope", format_rational(v.slope)},
        {"trace_identity", v.trace_identity},
        {"max_f", format_rational(v.witness_value)},
        {"witness", v.witness ? matrix_json(*v.witness) : nlohmann::json(nullptr)},
        {"methods",
         {{"lattice_exact", v.methods.lattice_exact},
          {"randomized", v.methods.randomized},
          {"flow_oracle", v.methods.flow_oracle}}},
        {"inconclusive", v.inconclusive},
        {"rank_unstable", v.rank_unstable},
        {"lattice_size", v.lattice_size},
        {"lattice_max", opt_rational(v.lattice_max)},
        {"randomized_max", opt_rational(v.randomized_max)},
        {"summands", summands},
        {"notes", v.notes},
    };
    if (v.oracle) {
        j["oracle"] = {{"converged", v.oracle->converged},
                       {"residual", v.oracle->residual},
                       {"condition", v.oracle->condition},
                       {"status", v.oracle->status}};
    } else {
        j["oracle"] = nullptr;
    }
    return j;
}

nlohmann::json orthoscalar_json(const OrthoscalarReport& r) {
    return {{"hermitian", r.hermitian},     {"idempotency", r.idempotency}, {"rank", r.rank},
            {"nesting", r.nesting},         {"orthoscalar", r.orthoscalar}, {"pass", r.pass}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "lambda,a2,b2,c2,sum,residual,status,iterations,exceptional,summands\n";
    for (const auto& r : rows) {
        out << format_lambda(r.lambda) << ',' << format_double(r.a2) << ',' << format_double(r.b2) << ','
            << format_double(r.c2) << ',' << format_double(r.sum) << ',' << format_double(r.residual) << ','
            << r.status << ',' << r.iterations << ',' << (r.exceptional ? "yes" : "no") << ',' << r.summands << '\n';
    }
    return out.str();
}

}  // namespace prl::io
