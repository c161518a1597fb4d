#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/registry/group.hpp"

namespace rsato {

namespace detail {

inline std::string join_rationals(const std::vector<BigRational>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
    return s.empty() ? "0" : s;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

struct Entry {
    std::string value;
    int line;
    int column;
};

/// Whitespace-separated tokens with their 1-based columns.
inline std::vector<std::pair<std::string, int>> tokens(const Entry& e) {
    std::vector<std::pair<std::string, int>> out;
    std::size_t i = 0;
    while (i < e.value.size()) {
        while (i < e.value.size() && std::isspace(static_cast<unsigned char>(e.value[i]))) ++i;
        std::size_t start = i;
        while (i < e.value.size() && !std::isspace(static_cast<unsigned char>(e.value[i]))) ++i;
        if (i > start) out.emplace_back(e.value.substr(start, i - start), e.column + static_cast<int>(start));
    }
    return out;
}

inline long parse_long(const std::string& tok, int line, int column) {
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used == tok.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw ParseError("expected an integer, got '" + tok + "'", line, column);
}

inline Poly parse_poly(const Entry& e) {
    std::vector<BigRational> v;
    for (const auto& [tok, col] : tokens(e)) v.push_back(parse_rational(tok, e.line, col));
    if (v.empty()) throw ParseError("empty coefficient list", e.line, e.column);
    return Poly(std::move(v));
}

inline IntMat2 parse_mat(const Entry& e) {
    auto t = tokens(e);
    if (t.size() != 4) throw ParseError("expected 4 integers 'a b c d'", e.line, e.column);
    return {parse_long(t[0].first, e.line, t[0].second), parse_long(t[1].first, e.line, t[1].second),
            parse_long(t[2].first, e.line, t[2].second), parse_long(t[3].first, e.line, t[3].second)};
}

inline std::string mat_text(const IntMat2& m) {
    return std::to_string(m.a) + " " + std::to_string(m.b) + " " + std::to_string(m.c) + " " + std::to_string(m.d);
}

/// Parses "P.<j>" / "psi.<j>" style indexed keys.
inline std::optional<long> indexed_key(const std::string& key, const std::string& prefix) {
    if (key.rfind(prefix + ".", 0) != 0) return std::nullopt;
    std::string idx = key.substr(prefix.size() + 1);
    if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return std::nullopt;
    return std::stol(idx);
}

} // namespace detail

/// Text form of a record (see docs/group-file.md); load_text inverts it.
inline std::string serialize(const GroupRecord& g) {
    std::ostringstream os;
    os << "[group]\nlabel = " << g.label << "\nlevel = " << g.level << "\n\n";
    os << "[eta]\nfactors =";
    for (const auto& f : g.eta.factors) os << " " << f.scale << ":" << f.exponent;
    os << "\npower = " << g.eta.outer_power << "\n\n";
    os << "[w]\ncoeffs = " << detail::join_rationals(g.w.coeffs()) << "\n\n";
    os << "[R]\ncoeffs = " << detail::join_rationals(g.R.coeffs()) << "\n\n";
    os << "[modeq]\nn = " << g.meq_n << "\n\n";
    auto [p, d, r] = g.cm.pdr();
    os << "[cm]\ntau0 = (" << p << " + sqrt(" << d << "))/" << r << "\n";
    os << "gamma = " << detail::mat_text(g.cm.gamma) << "\nA = " << detail::mat_text(g.cm.A) << "\n";
    bool any = g.expected_psi || !g.expected_recurrence.empty() || !g.expected_initials.empty() ||
               g.expected_B || g.expected_C || g.expected_x0 || !g.notes.empty();
    if (any) {
        os << "\n[expect]\n";
        if (g.expected_psi)
            for (int j = 0; j <= g.expected_psi->degree_y(); ++j)
                os << "psi." << j << " = " << detail::join_rationals(g.expected_psi->y_row(j).coeffs()) << "\n";
        for (std::size_t j = 0; j < g.expected_recurrence.size(); ++j)
            os << "P." << j << " = " << detail::join_rationals(g.expected_recurrence[j].coeffs()) << "\n";
        if (!g.expected_initials.empty()) os << "initials = " << detail::join_rationals(g.expected_initials) << "\n";
        if (g.expected_B) os << "B = " << g.expected_B->to_string() << "\n";
        if (g.expected_C) os << "C = " << g.expected_C->to_string() << "\n";
        if (g.expected_x0) os << "x0 = " << g.expected_x0->to_string() << "\n";
        for (const auto& n : g.notes) os << "note = " << n << "\n";
    }
    return os.str();
}

/// Parses and validates a group file. Syntax problems throw ParseError with
/// line and column; structural problems throw InvariantViolation.
inline GroupRecord load_text(std::string_view text) {
    using detail::Entry;
    static const std::map<std::string, std::set<std::string>> schema = {
        {"group", {"label", "level"}},
        {"eta", {"factors", "power"}},
        {"w", {"coeffs"}},
        {"R", {"coeffs"}},
        {"modeq", {"n"}},
        {"cm", {"tau0", "gamma", "A"}},
        {"expect", {"initials", "B", "C", "x0", "note"}},
    };
    std::map<std::string, std::map<std::string, Entry>> data;
    std::map<long, Entry> psi_rows, rec_rows;
    std::vector<std::string> notes;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string line(raw);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        int col = static_cast<int>(first) + 1;
        if (line[first] == '[') {
            std::size_t close = line.find(']', first);
            if (close == std::string::npos) throw ParseError("unterminated section header", line_no, col);
            section = detail::trim(std::string_view(line).substr(first + 1, close - first - 1));
            if (!schema.count(section)) throw ParseError("unknown section [" + section + "]", line_no, col);
            if (data.count(section)) throw ParseError("duplicate section [" + section + "]", line_no, col);
            data[section];
            if (!detail::trim(std::string_view(line).substr(close + 1)).empty())
                throw ParseError("trailing characters after section header", line_no, static_cast<int>(close) + 2);
            continue;
        }
        if (section.empty()) throw ParseError("key outside of any section", line_no, col);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, col);
        std::string key = detail::trim(std::string_view(line).substr(first, eq - first));
        std::size_t vstart = line.find_first_not_of(" \t", eq + 1);
        Entry entry{vstart == std::string::npos ? "" : detail::trim(std::string_view(line).substr(vstart)), line_no,
                    vstart == std::string::npos ? static_cast<int>(line.size()) + 1 : static_cast<int>(vstart) + 1};
        if (section == "expect") {
            if (auto j = detail::indexed_key(key, "psi")) {
                if (!psi_rows.emplace(*j, entry).second) throw ParseError("duplicate key " + key, line_no, col);
                continue;
            }
            if (auto j = detail::indexed_key(key, "P")) {
                if (!rec_rows.emplace(*j, entry).second) throw ParseError("duplicate key " + key, line_no, col);
                continue;
            }
            if (key == "note") {
                notes.push_back(entry.value);
                continue;
            }
        }
        if (!schema.at(section).count(key)) throw ParseError("unknown key '" + key + "' in [" + section + "]", line_no, col);
        if (!data[section].emplace(key, entry).second) throw ParseError("duplicate key " + key, line_no, col);
    }

    auto need = [&](const std::string& sec, const std::string& key) -> const Entry& {
        auto s = data.find(sec);
        if (s == data.end()) throw ParseError("missing section [" + sec + "]", line_no, 1);
        auto k = s->second.find(key);
        if (k == s->second.end()) throw ParseError("missing key '" + key + "' in [" + sec + "]", line_no, 1);
        return k->second;
    };
    auto opt = [&](const std::string& sec, const std::string& key) -> const Entry* {
        auto s = data.find(sec);
        if (s == data.end()) return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    };

    GroupRecord g;
    g.label = need("group", "label").value;
    const Entry& lvl = need("group", "level");
    g.level = detail::parse_long(lvl.value, lvl.line, lvl.column);

    const Entry& fac = need("eta", "factors");
    for (const auto& [tok, c] : detail::tokens(fac)) {
        std::size_t colon = tok.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'a:e' pair, got '" + tok + "'", fac.line, c);
        g.eta.factors.push_back({detail::parse_long(tok.substr(0, colon), fac.line, c),
                                 detail::parse_long(tok.substr(colon + 1), fac.line, c + static_cast<int>(colon) + 1)});
    }
    const Entry& pw = need("eta", "power");
    g.eta.outer_power = detail::parse_long(pw.value, pw.line, pw.column);

    g.w = detail::parse_poly(need("w", "coeffs"));
    g.R = detail::parse_poly(need("R", "coeffs"));
    const Entry& n = need("modeq", "n");
    g.meq_n = detail::parse_long(n.value, n.line, n.column);

    const Entry& tau = need("cm", "tau0");
    g.cm.tau0 = parse_quad(tau.value, tau.line, tau.column);
    g.cm.gamma = detail::parse_mat(need("cm", "gamma"));
    g.cm.A = detail::parse_mat(need("cm", "A"));

    if (!psi_rows.empty()) {
        std::vector<Poly> rows;
        long expect = 0;
        for (const auto& [j, e] : psi_rows) {
            if (j != expect++) throw ParseError("psi rows must be numbered 0, 1, 2, ...", e.line, e.column);
            rows.push_back(detail::parse_poly(e));
        }
        try {
            g.expected_psi = ModularEquation(g.meq_n, rows);
        } catch (const DomainError& err) {
            throw ParseError(err.what(), psi_rows.begin()->second.line, psi_rows.begin()->second.column);
        }
    }
    long expect = 0;
    for (const auto& [j, e] : rec_rows) {
        if (j != expect++) throw ParseError("recurrence rows must be numbered 0, 1, 2, ...", e.line, e.column);
        g.expected_recurrence.push_back(detail::parse_poly(e));
    }
    if (const Entry* e = opt("expect", "initials"))
        for (const auto& [tok, c] : detail::tokens(*e)) g.expected_initials.push_back(parse_rational(tok, e->line, c));
    if (const Entry* e = opt("expect", "B")) g.expected_B = RadicalExpr::parse(e->value, e->line, e->column);
    if (const Entry* e = opt("expect", "C")) g.expected_C = RadicalExpr::parse(e->value, e->line, e->column);
    if (const Entry* e = opt("expect", "x0")) g.expected_x0 = parse_quad(e->value, e->line, e->column);
    g.notes = std::move(notes);

    validate(g);
    return g;
}

inline GroupRecord load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open group file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_text(ss.str());
}

} // namespace rsato
