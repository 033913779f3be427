#pragma once

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "latinp/board_catalog.hpp"
#include "latinp/errors.hpp"
#include "latinp/fairness_rating.hpp"
#include "latinp/generator.hpp"
#include "latinp/io.hpp"
#include "latinp/search.hpp"
#include "latinp/solver_api.hpp"

namespace latinp::cli {

enum Exit : int { Ok = 0, Usage = 1, Invalid = 2, Budget = 3 };

namespace detail {

struct UsageError : Error {
    using Error::Error;
};

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::size_t to_size(const std::string& s, const std::string& what)
{
    std::size_t v = 0;
    if (!io::detail::parse_int(std::string_view(s), v) || v == 0)
        throw UsageError("bad " + what + " '" + s + "'");
    return v;
}

// "1:2,2:2"
inline LabelMultiset parse_labels(const std::string& text)
{
    std::vector<std::pair<std::string, int>> entries;
    for (const auto& item : split(text, ',')) {
        auto parts = split(item, ':');
        if (parts.size() != 2 || parts[0].empty())
            throw UsageError("bad --labels entry '" + item + "'");
        entries.emplace_back(parts[0], static_cast<int>(to_size(parts[1], "label count")));
    }
    try {
        return LabelMultiset(std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// "0=1,5=2" in display labels.
inline Inscription parse_inscription(const std::string& text, const LabelMultiset& m)
{
    Inscription ins;
    for (const auto& item : split(text, ',')) {
        auto parts = split(item, '=');
        CellId c = 0;
        if (parts.size() != 2 || !io::detail::parse_int(std::string_view(parts[0]), c))
            throw UsageError("bad --inscription entry '" + item + "'");
        auto l = m.find(parts[1]);
        if (!l)
            throw UsageError("unknown label '" + parts[1] + "' in --inscription");
        ins.pairs[c] = *l;
    }
    return ins;
}

// shidoku | sudoku | sudoku:RxC | latin:N | windoku | ripeto
inline PartialLabeledBoard family_board(const std::string& spec, const std::string& labels,
                                        const std::string& inscription)
{
    std::optional<LabelMultiset> multiset;
    if (!labels.empty())
        multiset = parse_labels(labels);
    auto parts = split(spec, ':');
    PartialLabeledBoard base = [&] {
        try {
            if (spec == "shidoku")
                return catalog::sudoku_boxes(2, 2, multiset);
            if (spec == "sudoku")
                return catalog::sudoku_boxes(3, 3, multiset);
            if (spec == "windoku")
                return multiset ? catalog::ripeto(catalog::windoku(), *multiset) : catalog::windoku();
            if (spec == "ripeto")
                return multiset ? catalog::ripeto(catalog::sudoku_boxes(3, 3), *multiset) : catalog::sudoku_ripeto();
            if (parts.size() == 2 && parts[0] == "latin")
                return catalog::latin_square(to_size(parts[1], "order"), multiset);
            if (parts.size() == 2 && parts[0] == "sudoku") {
                auto dims = split(parts[1], 'x');
                if (dims.size() == 2)
                    return catalog::sudoku_boxes(to_size(dims[0], "box rows"), to_size(dims[1], "box columns"),
                                                 multiset);
            }
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        throw UsageError("unknown family '" + spec + "'");
    }();
    if (inscription.empty())
        return base;
    Inscription ins = parse_inscription(inscription, base.multiset);
    for (auto [c, l] : ins.pairs)
        if (c >= base.cell_count())
            throw UsageError("inscription cell " + std::to_string(c) + " is off the board");
    auto out = catalog::inscripted(base, ins);
    if (!is_partial_latin_board(out))
        throw Error("inscription breaks the label counts");
    return out;
}

inline std::optional<Band> parse_band(const std::string& s)
{
    for (Band b : {Band::VeryEasy, Band::Easy, Band::Medium, Band::Difficult, Band::VeryDifficult, Band::Unfair}) {
        std::string name(to_string(b));
        std::string dashed = name;
        std::replace(dashed.begin(), dashed.end(), ' ', '_');
        if (s == name || s == dashed)
            return b;
    }
    return std::nullopt;
}

inline RatingConfig rating_config()
{
    const char* path = std::getenv("LATINP_CONFIG");
    if (!path || !*path)
        return {};
    std::ifstream in(path);
    if (!in)
        throw Error(std::string("cannot open rating config '") + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return io::parse_rating_config(buf.str());
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f)
        throw Error("cannot write '" + path + "'");
    f << text;
}

inline SearchConfig search_config(const std::optional<std::uint64_t>& nodes, const std::optional<std::uint64_t>& ms)
{
    SearchConfig cfg;
    cfg.node_limit = nodes;
    if (ms)
        cfg.time_limit = std::chrono::milliseconds(*ms);
    return cfg;
}

inline std::string puzzle_text(const GeneratedPuzzle& g)
{
    std::ostringstream out;
    out << "# clues " << g.puzzle.clue_count() << ", fair " << (g.fair ? "yes" : "no") << ", critical "
        << (g.critical ? "yes" : "no") << ", band " << to_string(g.rating.band) << ", score " << std::fixed
        << std::setprecision(4) << g.rating.score << '\n';
    out << io::serialize_board(g.puzzle);
    return out.str();
}

} // namespace detail

// Runs one command line; everything the command prints goes to out, and
// diagnostics go to err.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Latin board solver, puzzle generator and rater", "latinp"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Enumerate completions of a board file");
    std::string solve_file, solve_limit = "inf", solve_proof;
    bool solve_stats = false;
    unsigned solve_jobs = 1;
    std::optional<std::uint64_t> node_limit, time_limit;
    solve->add_option("board", solve_file, "Board file")->required();
    solve->add_option("--limit", solve_limit, "Number of solutions, or 'inf'");
    solve->add_option("--proof", solve_proof, "Write the proof of each solution to this file");
    solve->add_flag("--stats", solve_stats, "Print search counters to stderr");
    solve->add_option("--jobs", solve_jobs, "Worker threads for the root split")->check(CLI::Range(1u, 256u));
    solve->add_option("--node-limit", node_limit, "Stop after this many search nodes");
    solve->add_option("--time-limit", time_limit, "Stop after this many milliseconds");

    // classify
    auto* cls = app.add_subcommand("classify", "Count completions: 0, 1 or at least 2");
    std::string cls_file;
    cls->add_option("board", cls_file, "Board file")->required();
    cls->add_option("--node-limit", node_limit, "Stop after this many search nodes");
    cls->add_option("--time-limit", time_limit, "Stop after this many milliseconds");

    // generate
    auto* gen = app.add_subcommand("generate", "Generate Latin puzzles");
    std::string gen_board, gen_family, gen_labels, gen_inscription, gen_difficulty, gen_out;
    std::size_t gen_count = 1, gen_attempts = 200;
    std::uint64_t gen_seed = 0, gen_nodes = 2'000'000;
    bool gen_fair = false, gen_critical = false, gen_single = false;
    auto* board_opt = gen->add_option("--board", gen_board, "Start from this board file");
    auto* family_opt = gen->add_option("--family", gen_family,
                                       "shidoku, sudoku, sudoku:RxC, latin:N, windoku or ripeto");
    board_opt->excludes(family_opt);
    gen->add_option("--labels", gen_labels, "Multiset for --family, e.g. 1:2,2:2");
    gen->add_option("--inscription", gen_inscription, "Inscription for --family, e.g. 0=1,5=2");
    gen->add_option("--count", gen_count, "Number of puzzles")->check(CLI::PositiveNumber);
    gen->add_flag("--fair", gen_fair, "Keep only removals the shipped propagators can still solve");
    gen->add_flag("--critical", gen_critical, "Emit only critical puzzles");
    gen->add_option("--difficulty", gen_difficulty, "Emit only puzzles of this band");
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--out", gen_out, "Write puzzle_<i>.txt files into this directory");
    gen->add_flag("--single-pass", gen_single, "Harvest puzzles from one exhaustive enumeration");
    gen->add_option("--attempts", gen_attempts, "Latin boards to try before giving up");
    gen->add_option("--node-limit", gen_nodes, "Node budget of the --single-pass enumeration");

    // rate
    auto* rt = app.add_subcommand("rate", "Rate a puzzle from its proof");
    std::string rate_file, rate_proof;
    rt->add_option("puzzle", rate_file, "Puzzle file")->required();
    rt->add_option("--proof", rate_proof, "Rate this proof instead of solving the puzzle");

    // verify
    auto* ver = app.add_subcommand("verify", "Re-check puzzle properties");
    std::string ver_file;
    bool ver_fair = false, ver_critical = false, ver_minimal = false;
    ver->add_option("puzzle", ver_file, "Puzzle file")->required();
    ver->add_flag("--fair", ver_fair, "Certify fairness");
    ver->add_flag("--critical", ver_critical, "Check criticality");
    ver->add_flag("--minimal", ver_minimal, "Check minimality by exhaustive scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "latinp: " << e.what() << '\n';
        return Usage;
    }

    try {
        if (solve->parsed()) {
            auto plb = io::read_board_file(solve_file);
            SearchConfig cfg = detail::search_config(node_limit, time_limit);
            if (solve_limit != "inf")
                cfg.limit = SolutionLimit::of(detail::to_size(solve_limit, "--limit"));
            cfg.jobs = solve_jobs;
            cfg.record_proofs = !solve_proof.empty();
            SearchResult r = enumerate_solutions(plb, cfg);
            for (std::size_t i = 0; i < r.solutions.size(); ++i)
                out << "# solution " << i + 1 << '\n' << io::serialize_board(r.solutions[i]);
            if (!solve_proof.empty()) {
                std::string text;
                for (std::size_t i = 0; i < r.proofs.size(); ++i)
                    text += "# solution " + std::to_string(i + 1) + "\n" + io::serialize_proof(r.proofs[i], plb.multiset);
                detail::write_file(solve_proof, text);
            }
            if (solve_stats) {
                const auto& s = r.stats;
                err << "solutions " << r.solutions.size() << "\nnodes " << s.nodes << "\nbacktracks " << s.backtracks
                    << "\nbackjumps " << s.backjumps << "\npropagations " << s.propagations << "\nnogoods "
                    << s.nogoods_recorded << "\nwall_ms "
                    << std::chrono::duration_cast<std::chrono::milliseconds>(s.wall_time).count() << '\n';
            }
            if (r.status == SearchStatus::Incomplete) {
                err << "latinp: search budget exhausted; the list above may be incomplete\n";
                return Budget;
            }
            return Ok;
        }

        if (cls->parsed()) {
            auto plb = io::read_board_file(cls_file);
            Classification c = classify(plb, detail::search_config(node_limit, time_limit));
            out << to_string(c.tag) << '\n';
            return c.tag == ClassTag::Indeterminate ? Budget : Ok;
        }

        if (rt->parsed()) {
            auto puzzle = io::read_board_file(rate_file);
            const RatingConfig cfg = detail::rating_config();
            Proof proof;
            if (rate_proof.empty()) {
                proof = solve_puzzle(puzzle).proof;
            } else {
                std::ifstream in(rate_proof);
                if (!in)
                    throw Error("cannot open '" + rate_proof + "'");
                std::stringstream buf;
                buf << in.rdbuf();
                proof = io::parse_proof(buf.str(), puzzle.multiset);
            }
            out << io::format_rating(rate(proof, puzzle, cfg));
            return Ok;
        }

        if (ver->parsed()) {
            auto puzzle = io::read_board_file(ver_file);
            bool ok = true;
            const auto tag = classify(puzzle).tag;
            out << "classification " << to_string(tag) << '\n';
            ok = tag == ClassTag::UniqueSolution;
            if (ver_fair) {
                const bool fair = ok && certify_fair(puzzle, shipped_propagators()).fair;
                out << "fair " << (fair ? "yes" : "not certified") << '\n';
                ok = ok && fair;
            }
            if (ver_critical) {
                const bool critical = ok && is_critical(puzzle);
                out << "critical " << (critical ? "yes" : "no") << '\n';
                ok = ok && critical;
            }
            if (ver_minimal) {
                const MinimalityResult m = is_minimal(puzzle);
                if (m.verdict == Minimality::Unknown) {
                    out << "minimal unknown\n";
                    err << "latinp: minimality scan exceeds its budget\n";
                    return Budget;
                }
                const bool minimal = m.verdict == Minimality::Minimal;
                out << "minimal " << (minimal ? "yes" : "no") << '\n';
                if (m.witness)
                    out << "# smaller puzzle\n" << io::serialize_board(*m.witness);
                ok = ok && minimal;
            }
            return ok ? Ok : Invalid;
        }

        // generate
        if (gen_board.empty() == gen_family.empty())
            throw detail::UsageError("generate needs exactly one of --board or --family");
        std::optional<Band> want_band;
        if (!gen_difficulty.empty()) {
            want_band = detail::parse_band(gen_difficulty);
            if (!want_band)
                throw detail::UsageError("unknown band '" + gen_difficulty + "'");
        }
        PartialLabeledBoard pb = gen_board.empty()
                                     ? detail::family_board(gen_family, gen_labels, gen_inscription)
                                     : io::read_board_file(gen_board);
        if (!is_partial_latin_board(pb))
            throw Error("starting board is not a partial Latin board");

        GeneratorOptions opts;
        opts.acceptance = gen_fair ? Acceptance::Fair : Acceptance::Unique;
        opts.rating = detail::rating_config();
        auto wanted = [&](const GeneratedPuzzle& g) {
            return (!gen_fair || g.fair) && (!gen_critical || g.critical) && (!want_band || g.rating.band == *want_band);
        };

        std::vector<GeneratedPuzzle> picked;
        std::set<Assignment> seen;
        if (gen_single) {
            SinglePassOptions sp;
            sp.generator = opts;
            sp.node_limit = gen_nodes;
            SinglePassResult r = single_pass_generate(pb, sp);
            for (auto& g : r.puzzles)
                if (picked.size() < gen_count && wanted(g) && seen.insert(g.puzzle.assignment).second)
                    picked.push_back(std::move(g));
        } else {
            opts.annotate = false;
            for (std::size_t attempt = 0; attempt < gen_attempts && picked.size() < gen_count; ++attempt) {
                const std::uint64_t seed = gen_seed + attempt;
                SearchConfig cfg;
                cfg.limit = SolutionLimit::of(1);
                cfg.instantiation = Instantiation::Seeded;
                cfg.seed = seed;
                SearchResult boards = enumerate_solutions(pb, cfg);
                if (boards.solutions.empty())
                    throw Error("starting board has no completion");
                opts.seed = seed;
                auto chain = puzzles_from_latin_board(boards.solutions.front(), opts);
                // Deepest acceptable puzzle of the chain.
                GeneratorOptions full = opts;
                full.annotate = true;
                for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                    if (seen.count(it->puzzle.assignment))
                        continue;
                    GeneratedPuzzle g = annotate(it->puzzle, it->solution, full);
                    if (wanted(g)) {
                        seen.insert(g.puzzle.assignment);
                        picked.push_back(std::move(g));
                        break;
                    }
                }
            }
        }

        if (!gen_out.empty())
            std::filesystem::create_directories(gen_out);
        for (std::size_t i = 0; i < picked.size(); ++i) {
            const std::string text = detail::puzzle_text(picked[i]);
            if (gen_out.empty())
                out << "# puzzle " << i + 1 << '\n' << text;
            else
                detail::write_file((std::filesystem::path(gen_out) / ("puzzle_" + std::to_string(i + 1) + ".txt")).string(),
                                   text);
        }
        if (picked.size() < gen_count) {
            err << "latinp: found " << picked.size() << " of " << gen_count << " requested puzzles\n";
            return Budget;
        }
        return Ok;
    } catch (const detail::UsageError& e) {
        err << "latinp: " << e.what() << '\n';
        return Usage;
    } catch (const ParseError& e) {
        err << "latinp: " << e.what() << '\n';
        return Invalid;
    } catch (const BudgetExceeded& e) {
        err << "latinp: " << e.what() << '\n';
        return Budget;
    } catch (const ExhaustionRequired& e) {
        err << "latinp: " << e.what() << '\n';
        return Budget;
    } catch (const std::exception& e) {
        err << "latinp: " << e.what() << '\n';
        return Invalid;
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"latinp"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace latinp::cli
