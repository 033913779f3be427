#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "latinp/core_model.hpp"
#include "latinp/errors.hpp"
#include "latinp/fairness_rating.hpp"
#include "latinp/proof.hpp"

namespace latinp::io {

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> words(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t')
            ++i;
        if (i > start)
            out.push_back(s.substr(start, i - start));
    }
    return out;
}

template <class Int>
bool parse_int(std::string_view s, Int& out)
{
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

// Splits "a<sep>b" at the first separator.
inline bool split_pair(std::string_view s, char sep, std::string_view& lhs, std::string_view& rhs)
{
    const auto at = s.find(sep);
    if (at == std::string_view::npos || at == 0 || at + 1 == s.size())
        return false;
    lhs = s.substr(0, at);
    rhs = s.substr(at + 1);
    return true;
}

} // namespace detail

// Reads the line-oriented board format:
//
//   board <name>
//   cells <n>
//   labels <display:count> ...
//   asterism <cell> ...            (repeated)
//   inscription <cell>=<display> ... (optional)
//   clue <cell>=<display>          (repeated)
//
// '#' starts a comment; blank lines are ignored.
inline PartialLabeledBoard parse_board(std::string_view text)
{
    using Kind = ParseError::Kind;
    std::string name;
    std::optional<std::size_t> cells;
    std::optional<LabelMultiset> multiset;
    std::vector<std::vector<CellId>> asterisms;
    std::vector<std::size_t> asterism_lines;
    std::optional<Inscription> inscription;
    std::vector<std::pair<std::size_t, Placement>> clues; // with line numbers

    auto cell_id = [&](std::string_view tok, std::size_t line) {
        CellId c = 0;
        if (!detail::parse_int(tok, c))
            throw ParseError(Kind::Syntax, line, "bad cell id '" + std::string(tok) + "'");
        if (!cells)
            throw ParseError(Kind::Syntax, line, "'cells' must come before cell references");
        if (c >= *cells)
            throw ParseError(Kind::CellOutOfRange, line, "cell " + std::to_string(c) + " out of range");
        return c;
    };
    auto label_id = [&](std::string_view tok, std::size_t line) {
        if (!multiset)
            throw ParseError(Kind::Syntax, line, "'labels' must come before label references");
        auto l = multiset->find(std::string(tok));
        if (!l)
            throw ParseError(Kind::UnknownLabel, line, "unknown label '" + std::string(tok) + "'");
        return *l;
    };
    auto pair_of = [&](std::string_view tok, std::size_t line) {
        std::string_view lhs, rhs;
        if (!detail::split_pair(tok, '=', lhs, rhs))
            throw ParseError(Kind::Syntax, line, "expected <cell>=<label>, got '" + std::string(tok) + "'");
        return Placement{cell_id(lhs, line), label_id(rhs, line)};
    };

    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        auto toks = detail::words(line);
        const std::string_view key = toks.front();
        const std::span<const std::string_view> args(toks.data() + 1, toks.size() - 1);

        if (key == "board") {
            name = std::string(detail::trim(line.substr(5)));
            if (name.empty())
                throw ParseError(Kind::Syntax, line_no, "board needs a name");
        } else if (key == "cells") {
            std::size_t n = 0;
            if (args.size() != 1 || !detail::parse_int(args[0], n) || n == 0)
                throw ParseError(Kind::BadCount, line_no, "cells needs one positive count");
            cells = n;
        } else if (key == "labels") {
            std::vector<std::pair<std::string, int>> entries;
            for (auto tok : args) {
                std::string_view display, count;
                int k = 0;
                if (!detail::split_pair(tok, ':', display, count))
                    throw ParseError(Kind::Syntax, line_no, "expected <label>:<count>, got '" + std::string(tok) + "'");
                if (!detail::parse_int(count, k) || k < 1)
                    throw ParseError(Kind::BadCount, line_no, "bad count for label '" + std::string(display) + "'");
                entries.emplace_back(std::string(display), k);
            }
            try {
                multiset = LabelMultiset(std::move(entries));
            } catch (const std::invalid_argument& e) {
                throw ParseError(Kind::BadCount, line_no, e.what());
            }
        } else if (key == "asterism") {
            if (args.empty())
                throw ParseError(Kind::Syntax, line_no, "empty asterism");
            std::vector<CellId> a;
            for (auto tok : args)
                a.push_back(cell_id(tok, line_no));
            asterisms.push_back(std::move(a));
            asterism_lines.push_back(line_no);
        } else if (key == "inscription") {
            if (!inscription)
                inscription.emplace();
            for (auto tok : args) {
                const Placement p = pair_of(tok, line_no);
                if (!inscription->pairs.emplace(p.cell, p.label).second)
                    throw ParseError(Kind::Syntax, line_no, "cell inscribed twice");
            }
        } else if (key == "clue") {
            if (args.size() != 1)
                throw ParseError(Kind::Syntax, line_no, "clue takes one <cell>=<label>");
            clues.emplace_back(line_no, pair_of(args[0], line_no));
        } else {
            throw ParseError(Kind::Syntax, line_no, "unknown keyword '" + std::string(key) + "'");
        }
    }

    if (name.empty() || !cells || !multiset || asterisms.empty())
        throw ParseError(Kind::Syntax, line_no, "board, cells, labels and at least one asterism are required");

    auto board = std::make_shared<const Board>(name, *cells, asterisms);
    const ValidationReport report = validate_board(*board, static_cast<std::size_t>(multiset->k()));
    if (!report.ok()) {
        std::size_t where = line_no;
        std::string what = "board is not " + std::to_string(multiset->k()) + "-uniform";
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, CellNotCovered>)
                    what += ": cell " + std::to_string(v.cell) + " is in no asterism";
                else {
                    where = asterism_lines[v.index];
                    if constexpr (std::is_same_v<T, AsterismWrongSize>)
                        what += ": asterism has " + std::to_string(v.size) + " cells";
                    else
                        what += ": asterism repeats a cell";
                }
            },
            report.violations.front());
        throw ParseError(Kind::NonUniform, where, what);
    }

    PartialLabeledBoard plb(std::move(board), *multiset, inscription);
    for (auto [line, p] : clues) {
        if (plb.assignment[p.cell] && *plb.assignment[p.cell] != p.label)
            throw ParseError(Kind::Syntax, line, "clue conflicts with the inscription or an earlier clue");
        plb.assignment[p.cell] = p.label;
    }
    return plb;
}

inline PartialLabeledBoard read_board_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_board(buf.str());
}

// Canonical text: distinct asterisms with sorted cells in sorted order, then
// the inscription and every assigned cell as a clue, by cell id.
inline std::string serialize_board(const PartialLabeledBoard& plb)
{
    std::ostringstream out;
    out << "board " << plb.board->name() << '\n';
    out << "cells " << plb.cell_count() << '\n';
    out << "labels";
    for (LabelId l = 0; l < plb.multiset.size(); ++l)
        out << ' ' << plb.multiset.name(l) << ':' << plb.multiset.count(l);
    out << '\n';
    auto asterisms = plb.board->asterisms();
    std::sort(asterisms.begin(), asterisms.end());
    for (const auto& a : asterisms) {
        out << "asterism";
        for (CellId c : a)
            out << ' ' << c;
        out << '\n';
    }
    if (plb.inscription) {
        out << "inscription";
        for (auto [c, l] : plb.inscription->pairs)
            out << ' ' << c << '=' << plb.multiset.name(l);
        out << '\n';
    }
    for (CellId c = 0; c < plb.cell_count(); ++c)
        if (auto l = plb.assignment[c])
            out << "clue " << c << '=' << plb.multiset.name(*l) << '\n';
    return out.str();
}

// Row-major picture of a square board ('.' for empty cells); empty string
// when the cell count is not a perfect square.
inline std::string render_grid(const PartialLabeledBoard& plb)
{
    std::size_t n = 1;
    while (n * n < plb.cell_count())
        ++n;
    if (n * n != plb.cell_count())
        return {};
    std::size_t width = 1;
    for (LabelId l = 0; l < plb.multiset.size(); ++l)
        width = std::max(width, plb.multiset.name(l).size());
    std::ostringstream out;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const auto& slot = plb.assignment[r * n + c];
            out << (c ? " " : "") << std::setw(static_cast<int>(width))
                << (slot ? plb.multiset.name(*slot) : std::string("."));
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Proofs: one step per line, "<serial> <actor> <effect>", where the effect is
// a list of <cell>-<label> eliminations and <cell>=<label> placements.

inline std::string serialize_proof(const Proof& proof, const LabelMultiset& multiset)
{
    std::ostringstream out;
    for (const auto& s : proof.steps) {
        out << s.serial << ' ' << s.actor;
        for (auto e : s.eliminations)
            out << ' ' << e.cell << '-' << multiset.name(e.label);
        for (auto p : s.placements)
            out << ' ' << p.cell << '=' << multiset.name(p.label);
        out << '\n';
    }
    return out.str();
}

inline Proof parse_proof(std::string_view text, const LabelMultiset& multiset)
{
    using Kind = ParseError::Kind;
    Proof proof;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        auto toks = detail::words(detail::trim(line));
        if (toks.empty())
            continue;
        if (toks.size() < 2)
            throw ParseError(Kind::Syntax, line_no, "expected <serial> <actor> <effect>");
        ProofStep step;
        if (!detail::parse_int(toks[0], step.serial))
            throw ParseError(Kind::Syntax, line_no, "bad serial");
        if (!proof.steps.empty() && step.serial <= proof.steps.back().serial)
            throw ParseError(Kind::Syntax, line_no, "serials must increase");
        step.actor = std::string(toks[1]);
        for (std::size_t i = 2; i < toks.size(); ++i) {
            const auto tok = toks[i];
            const auto at = tok.find_first_of("-=");
            std::string_view lhs, rhs;
            if (at == std::string_view::npos || !detail::split_pair(tok, tok[at], lhs, rhs))
                throw ParseError(Kind::Syntax, line_no, "bad effect '" + std::string(tok) + "'");
            CellId c = 0;
            if (!detail::parse_int(lhs, c))
                throw ParseError(Kind::Syntax, line_no, "bad cell in '" + std::string(tok) + "'");
            auto l = multiset.find(std::string(rhs));
            if (!l)
                throw ParseError(Kind::UnknownLabel, line_no, "unknown label '" + std::string(rhs) + "'");
            if (tok[at] == '-')
                step.eliminations.push_back({c, *l});
            else
                step.placements.push_back({c, *l});
        }
        proof.steps.push_back(std::move(step));
    }
    return proof;
}

// ---------------------------------------------------------------------------
// Rating configuration: "weights.<propagator> = <int>" and
// "bands.<very_easy|easy|medium|difficult> = <upper score bound>".

inline RatingConfig parse_rating_config(std::string_view text)
{
    using Kind = ParseError::Kind;
    static constexpr std::array<std::string_view, 4> band_keys{"very_easy", "easy", "medium", "difficult"};
    RatingConfig cfg;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        std::string_view key, value;
        if (!detail::split_pair(line, '=', key, value))
            throw ParseError(Kind::Syntax, line_no, "expected <key> = <value>");
        key = detail::trim(key);
        value = detail::trim(value);
        if (key.starts_with("weights.")) {
            int w = 0;
            if (!detail::parse_int(value, w) || w < 1)
                throw ParseError(Kind::BadCount, line_no, "weights must be positive integers");
            cfg.weights[std::string(key.substr(8))] = w;
        } else if (key.starts_with("bands.")) {
            const auto band = key.substr(6);
            auto it = std::find(band_keys.begin(), band_keys.end(), band);
            if (it == band_keys.end())
                throw ParseError(Kind::Syntax, line_no, "unknown band '" + std::string(band) + "'");
            try {
                cfg.band_limits[static_cast<std::size_t>(it - band_keys.begin())] = std::stod(std::string(value));
            } catch (const std::exception&) {
                throw ParseError(Kind::BadCount, line_no, "bad band limit");
            }
        } else {
            throw ParseError(Kind::Syntax, line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    if (!std::is_sorted(cfg.band_limits.begin(), cfg.band_limits.end()))
        throw ParseError(Kind::BadCount, line_no, "band limits must be non-decreasing");
    return cfg;
}

inline std::string format_rating(const DifficultyRating& r)
{
    std::ostringstream out;
    out << "score " << std::fixed << std::setprecision(4) << r.score << '\n';
    out << "band " << to_string(r.band) << '\n';
    out << "histogram";
    for (const auto& [actor, n] : r.histogram)
        out << ' ' << actor << '=' << n;
    out << '\n';
    return out.str();
}

} // namespace latinp::io
