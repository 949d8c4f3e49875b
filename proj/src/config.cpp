#include "pyramc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <string_view>

#include "pyramc/errors.hpp"
#include "pyramc/geometry.hpp"
#include "pyramc/numfmt.hpp"

namespace pyramc {
namespace {

struct Token {
    std::string text;
    int line{0};
    int column{0};
};

[[noreturn]] void fail(ErrorCode code, const Token& at, const std::string& msg)
{
    throw ConfigError(code, at.line, at.column, msg);
}

std::string_view trim(std::string_view s, int& col)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
        ++col;
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(const Token& tok)
{
    const std::string& s = tok.text;
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        fail(ErrorCode::config_syntax, tok, "expected a number, got '" + s + "'");
    }
    return value;
}

std::uint64_t parse_count(const Token& tok, const char* what)
{
    const double v = parse_number(tok);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e18) {
        fail(ErrorCode::config_syntax, tok,
             std::string(what) + " must be a positive integer, got '" + tok.text + "'");
    }
    return std::uint64_t(v);
}

std::uint64_t parse_unsigned(const Token& tok, const char* what)
{
    const double v = parse_number(tok);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e18) {
        fail(ErrorCode::config_syntax, tok,
             std::string(what) + " must be a non-negative integer, got '" + tok.text + "'");
    }
    return std::uint64_t(v);
}

// Split "a, b, c" at top-level commas (parentheses nest).
std::vector<Token> split_list(const Token& tok)
{
    std::vector<Token> items;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= tok.text.size(); ++i) {
        const char ch = i < tok.text.size() ? tok.text[i] : ',';
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            int col = tok.column + int(start);
            std::string_view piece = trim(std::string_view(tok.text).substr(start, i - start), col);
            if (!piece.empty()) items.push_back({std::string(piece), tok.line, col});
            start = i + 1;
        }
    }
    if (depth != 0) fail(ErrorCode::config_syntax, tok, "unbalanced parentheses");
    return items;
}

std::vector<Token> parse_bracketed(const Token& tok)
{
    if (tok.text.size() < 2 || tok.text.front() != '[' || tok.text.back() != ']') {
        fail(ErrorCode::config_syntax, tok, "expected a [v, v, ...] list");
    }
    int col = tok.column + 1;
    std::string_view inner = trim(std::string_view(tok.text).substr(1, tok.text.size() - 2), col);
    if (inner.empty()) return {};
    return split_list({std::string(inner), tok.line, col});
}

std::vector<double> parse_tuple(const Token& tok, std::size_t arity)
{
    if (tok.text.size() < 2 || tok.text.front() != '(' || tok.text.back() != ')') {
        fail(ErrorCode::config_syntax, tok, "expected a (…) point");
    }
    int col = tok.column + 1;
    std::string_view inner = trim(std::string_view(tok.text).substr(1, tok.text.size() - 2), col);
    const auto items = split_list({std::string(inner), tok.line, col});
    if (items.size() != arity) {
        fail(ErrorCode::config_syntax, tok,
             "expected " + std::to_string(arity) + " coordinates, got "
                 + std::to_string(items.size()));
    }
    std::vector<double> vals;
    vals.reserve(arity);
    for (const Token& item : items) vals.push_back(parse_number(item));
    return vals;
}

struct RawKey {
    Token value;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text)
{
    // Pass 1: collect section/key tokens.
    std::map<std::string, std::map<std::string, RawKey>> sections;
    std::map<std::string, Token> section_tokens;

    static const std::map<std::string, std::vector<std::string>> known = {
        {"domain", {"h", "vertices"}},
        {"boundary", {"mode", "face_values", "base_value", "source"}},
        {"solve", {"points", "nq", "trajectories", "seed", "max_steps"}},
        {"output", {"csv", "verbosity"}},
    };

    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        int col = 1;
        std::string_view line = trim(raw, col);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(ErrorCode::config_syntax, line_no, col, "unterminated section header");
            }
            std::string name(line.substr(1, line.size() - 2));
            if (!known.count(name)) {
                throw ConfigError(ErrorCode::config_unknown_key, line_no, col,
                                  "unknown section [" + name + "]");
            }
            current = name;
            section_tokens[name] = {name, line_no, col};
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(ErrorCode::config_syntax, line_no, col,
                              "expected 'key = value' or a [section] header");
        }
        if (current.empty()) {
            throw ConfigError(ErrorCode::config_syntax, line_no, col,
                              "key outside of any section");
        }
        int key_col = col;
        std::string key(trim(line.substr(0, eq), key_col));
        int val_col = col + int(eq) + 1;
        std::string value(trim(line.substr(eq + 1), val_col));
        if (key.empty()) {
            throw ConfigError(ErrorCode::config_syntax, line_no, col, "empty key");
        }
        if (value.empty()) {
            throw ConfigError(ErrorCode::config_syntax, line_no, val_col,
                              "missing value for key '" + key + "'");
        }

        const auto& keys = known.at(current);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError(ErrorCode::config_unknown_key, line_no, key_col,
                              "unknown key '" + key + "' in section [" + current + "]");
        }
        sections[current][key] = {{value, line_no, val_col}};
    }

    auto require_section = [&](const std::string& name) -> std::map<std::string, RawKey>& {
        if (!sections.count(name)) {
            throw ConfigError(ErrorCode::config_syntax, std::max(1, line_no), 1,
                              "missing required section [" + name + "]");
        }
        return sections[name];
    };
    auto require = [&](std::map<std::string, RawKey>& sec, const std::string& section,
                       const std::string& key) -> Token& {
        auto it = sec.find(key);
        if (it == sec.end()) {
            const Token& st = section_tokens.at(section);
            throw ConfigError(ErrorCode::config_syntax, st.line, st.column,
                              "section [" + section + "] is missing required key '" + key + "'");
        }
        return it->second.value;
    };

    ExperimentConfig cfg;

    // [domain]
    auto& dom_sec = require_section("domain");
    const Token& h_tok = require(dom_sec, "domain", "h");
    cfg.h = parse_number(h_tok);
    const Token& verts_tok = require(dom_sec, "domain", "vertices");
    for (const Token& item : parse_bracketed(verts_tok)) {
        const auto xy = parse_tuple(item, 2);
        cfg.vertices.push_back({xy[0], xy[1]});
    }

    // [boundary]
    auto& bnd_sec = require_section("boundary");
    const Token& mode_tok = require(bnd_sec, "boundary", "mode");
    if (mode_tok.text == "piecewise") {
        cfg.mode = ExperimentConfig::Mode::piecewise;
        for (const Token& item : parse_bracketed(require(bnd_sec, "boundary", "face_values"))) {
            cfg.face_values.push_back(parse_number(item));
        }
        cfg.base_value = parse_number(require(bnd_sec, "boundary", "base_value"));
        if (cfg.face_values.size() != cfg.vertices.size()) {
            fail(ErrorCode::config_arity_mismatch, bnd_sec.at("face_values").value,
                 std::to_string(cfg.face_values.size()) + " face values for n="
                     + std::to_string(cfg.vertices.size()));
        }
    } else if (mode_tok.text == "point-source") {
        cfg.mode = ExperimentConfig::Mode::point_source;
        const auto xyz = parse_tuple(require(bnd_sec, "boundary", "source"), 3);
        cfg.source = {xyz[0], xyz[1], xyz[2]};
    } else {
        fail(ErrorCode::config_syntax, mode_tok,
             "mode must be 'piecewise' or 'point-source', got '" + mode_tok.text + "'");
    }

    // [solve]
    auto& solve_sec = require_section("solve");
    for (const Token& item : parse_bracketed(require(solve_sec, "solve", "points"))) {
        const auto xyz = parse_tuple(item, 3);
        cfg.points.push_back({xyz[0], xyz[1], xyz[2]});
    }
    if (cfg.points.empty()) {
        fail(ErrorCode::config_syntax, solve_sec.at("points").value, "points list is empty");
    }

    const Token& nq_tok = require(solve_sec, "solve", "nq");
    std::vector<Token> nq_items = nq_tok.text.front() == '['
                                      ? parse_bracketed(nq_tok)
                                      : std::vector<Token>{nq_tok};
    for (const Token& item : nq_items) {
        const std::uint64_t v = parse_count(item, "nq");
        if (v > 1'000'000'000) fail(ErrorCode::config_syntax, item, "nq is implausibly large");
        cfg.nq.push_back(int(v));
    }
    if (cfg.nq.size() == 1 && cfg.points.size() > 1) {
        cfg.nq.assign(cfg.points.size(), cfg.nq.front());
    }
    if (cfg.nq.size() != cfg.points.size()) {
        fail(ErrorCode::config_arity_mismatch, nq_tok,
             std::to_string(cfg.nq.size()) + " nq values for " + std::to_string(cfg.points.size())
                 + " points");
    }

    for (const Token& item : parse_bracketed(require(solve_sec, "solve", "trajectories"))) {
        cfg.trajectory_counts.push_back(parse_count(item, "trajectory count"));
    }
    if (cfg.trajectory_counts.empty()) {
        fail(ErrorCode::config_syntax, solve_sec.at("trajectories").value,
             "trajectories list is empty");
    }
    if (solve_sec.count("seed")) cfg.seed = parse_unsigned(solve_sec.at("seed").value, "seed");
    if (solve_sec.count("max_steps")) {
        cfg.max_steps = parse_count(solve_sec.at("max_steps").value, "max_steps");
    }

    // [output] (optional)
    if (sections.count("output")) {
        auto& out_sec = sections["output"];
        if (out_sec.count("csv")) cfg.csv_path = out_sec.at("csv").value.text;
        if (out_sec.count("verbosity")) {
            const Token& v = out_sec.at("verbosity").value;
            if (v.text == "normal") {
                cfg.verbosity = ExperimentConfig::Verbosity::normal;
            } else if (v.text == "verbose") {
                cfg.verbosity = ExperimentConfig::Verbosity::verbose;
            } else {
                fail(ErrorCode::config_syntax, v,
                     "verbosity must be 'normal' or 'verbose', got '" + v.text + "'");
            }
        }
    }

    // The domain must actually build.
    try {
        build_domain(cfg.h, cfg.vertices);
    } catch (const Error& e) {
        throw ConfigError(ErrorCode::invalid_domain, verts_tok.line, verts_tok.column, e.what());
    }

    return cfg;
}

std::string serialize_config(const ExperimentConfig& c)
{
    std::ostringstream out;
    out << "[domain]\n";
    out << "h = " << num_to_string(c.h) << "\n";
    out << "vertices = [";
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        if (i) out << ", ";
        out << "(" << num_to_string(c.vertices[i].x) << ", " << num_to_string(c.vertices[i].y)
            << ")";
    }
    out << "]\n\n";

    out << "[boundary]\n";
    if (c.mode == ExperimentConfig::Mode::piecewise) {
        out << "mode = piecewise\n";
        out << "face_values = [";
        for (std::size_t i = 0; i < c.face_values.size(); ++i) {
            if (i) out << ", ";
            out << num_to_string(c.face_values[i]);
        }
        out << "]\n";
        out << "base_value = " << num_to_string(c.base_value) << "\n\n";
    } else {
        out << "mode = point-source\n";
        out << "source = (" << num_to_string(c.source.x) << ", " << num_to_string(c.source.y)
            << ", " << num_to_string(c.source.z) << ")\n\n";
    }

    out << "[solve]\n";
    out << "points = [";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        if (i) out << ", ";
        out << "(" << num_to_string(c.points[i].x) << ", " << num_to_string(c.points[i].y) << ", "
            << num_to_string(c.points[i].z) << ")";
    }
    out << "]\n";
    out << "nq = [";
    for (std::size_t i = 0; i < c.nq.size(); ++i) {
        if (i) out << ", ";
        out << c.nq[i];
    }
    out << "]\n";
    out << "trajectories = [";
    for (std::size_t i = 0; i < c.trajectory_counts.size(); ++i) {
        if (i) out << ", ";
        out << c.trajectory_counts[i];
    }
    out << "]\n";
    out << "seed = " << c.seed << "\n";
    out << "max_steps = " << c.max_steps << "\n\n";

    out << "[output]\n";
    if (!c.csv_path.empty()) out << "csv = " << c.csv_path << "\n";
    out << "verbosity = "
        << (c.verbosity == ExperimentConfig::Verbosity::verbose ? "verbose" : "normal") << "\n";
    return out.str();
}

}  // namespace pyramc
