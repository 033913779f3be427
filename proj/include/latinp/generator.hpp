#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "latinp/core_model.hpp"
#include "latinp/errors.hpp"
#include "latinp/fairness_rating.hpp"
#include "latinp/search.hpp"
#include "latinp/solver_api.hpp"

namespace latinp {

struct GeneratedPuzzle {
    PartialLabeledBoard puzzle;
    PartialLabeledBoard solution;
    Proof proof;
    bool fair = false;
    bool critical = false;
    DifficultyRating rating;
};

// What a clue removal must preserve to be kept.
enum class Acceptance {
    Unique, // the puzzle keeps exactly one completion
    Fair,   // the shipped monotonic propagators still solve it alone
};

struct GeneratorOptions {
    std::uint64_t seed = 0;
    Acceptance acceptance = Acceptance::Unique;
    std::optional<std::size_t> stop_after;
    // Visit clues in this order instead of the seeded permutation.
    std::optional<std::vector<CellId>> removal_order;
    PropagatorSet propagators = shipped_propagators();
    RatingConfig rating;
    // Fill proof, fairness, criticality and rating for each emission.
    bool annotate = true;
};

// Removing any clue outside the inscription breaks uniqueness.
inline bool is_critical(const PartialLabeledBoard& puzzle)
{
    PartialLabeledBoard work = puzzle;
    for (CellId c : puzzle.clue_cells()) {
        if (puzzle.inscribed(c))
            continue;
        const auto saved = work.assignment[c];
        work.assignment[c].reset();
        const bool still_unique = classify(work).tag == ClassTag::UniqueSolution;
        work.assignment[c] = saved;
        if (still_unique)
            return false;
    }
    return true;
}

inline GeneratedPuzzle annotate(const PartialLabeledBoard& puzzle, const PartialLabeledBoard& solution,
                                const GeneratorOptions& opts)
{
    GeneratedPuzzle g{puzzle, solution, {}, false, false, {}};
    if (!opts.annotate)
        return g;
    SearchConfig cfg;
    cfg.propagators = opts.propagators;
    SolvedPuzzle solved = solve_puzzle(puzzle, cfg);
    if (solved.solution.assignment != solution.assignment)
        throw std::logic_error("generated puzzle completes to a different Latin board");
    g.proof = std::move(solved.proof);
    g.fair = certify_fair(puzzle, opts.propagators).fair;
    g.critical = is_critical(puzzle);
    g.rating = rate(g.proof, puzzle, opts.rating);
    return g;
}

namespace detail {

inline bool accepts(const PartialLabeledBoard& plb, const GeneratorOptions& opts)
{
    if (opts.acceptance == Acceptance::Fair)
        return certify_fair(plb, opts.propagators).fair;
    return classify(plb).tag == ClassTag::UniqueSolution;
}

inline bool capped(const std::vector<GeneratedPuzzle>& out, const GeneratorOptions& opts)
{
    return opts.stop_after && out.size() >= *opts.stop_after;
}

} // namespace detail

// Latin puzzles of a Latin board by clue removal: drop a clue, keep the
// board (and descend from it) when it is still accepted, otherwise put the
// clue back and try the next one. Inscription clues are never removed.
// Every emission has strictly fewer clues than the previous one.
inline std::vector<GeneratedPuzzle> puzzles_from_latin_board(const PartialLabeledBoard& lb,
                                                             const GeneratorOptions& opts = {})
{
    if (!is_latin_board(lb))
        throw std::invalid_argument("puzzles_from_latin_board: input is not a Latin board");

    std::vector<CellId> order;
    if (opts.removal_order) {
        for (CellId c : *opts.removal_order)
            if (c < lb.cell_count() && !lb.inscribed(c))
                order.push_back(c);
    } else {
        for (CellId c = 0; c < lb.cell_count(); ++c)
            if (!lb.inscribed(c))
                order.push_back(c);
        std::mt19937_64 rng(opts.seed);
        std::shuffle(order.begin(), order.end(), rng);
    }

    std::vector<GeneratedPuzzle> out;
    PartialLabeledBoard work = lb;
    // A clue that could not be removed from a board stays irremovable from
    // every board with fewer clues, since acceptance is preserved by adding
    // clues.
    std::vector<char> irremovable(lb.cell_count(), 0);

    std::function<void()> recur = [&] {
        for (CellId c : order) {
            if (detail::capped(out, opts))
                return;
            if (!work.assignment[c] || irremovable[c])
                continue;
            const auto saved = work.assignment[c];
            work.assignment[c].reset();
            if (detail::accepts(work, opts)) {
                out.push_back(annotate(work, lb, opts));
                recur();
            } else {
                work.assignment[c] = saved;
                irremovable[c] = 1;
            }
        }
    };
    recur();
    return out;
}

// Up to n Latin boards of pb, then the puzzles of each, concatenated.
inline std::vector<GeneratedPuzzle> puzzles_from_pb(const PartialLabeledBoard& pb, std::size_t n,
                                                    const GeneratorOptions& opts = {})
{
    if (n == 0)
        throw std::invalid_argument("puzzles_from_pb: the number of Latin boards must be positive");
    SearchConfig cfg;
    cfg.limit = SolutionLimit::of(n);
    cfg.instantiation = Instantiation::Seeded;
    cfg.seed = opts.seed;
    SearchResult boards = enumerate_solutions(pb, cfg);

    std::vector<GeneratedPuzzle> all;
    for (std::size_t i = 0; i < boards.solutions.size() && !detail::capped(all, opts); ++i) {
        GeneratorOptions sub = opts;
        sub.seed = opts.seed + i;
        if (opts.stop_after)
            sub.stop_after = *opts.stop_after - all.size();
        auto puzzles = puzzles_from_latin_board(boards.solutions[i], sub);
        std::move(puzzles.begin(), puzzles.end(), std::back_inserter(all));
    }
    return all;
}

struct SinglePassOptions {
    GeneratorOptions generator;
    std::optional<std::uint64_t> node_limit;
    std::optional<std::chrono::milliseconds> time_limit;
};

struct SinglePassResult {
    std::vector<GeneratedPuzzle> puzzles;
    std::vector<PartialLabeledBoard> solutions;
    std::vector<TagSequence> tag_sequences; // parallel to solutions
    std::size_t rejected = 0;               // candidates that failed re-classification
};

// Puzzles harvested from one exhaustive enumeration. Every written label is
// tagged; a tag that occurs in exactly one solution's sequence marks the
// board reached right after that write as a candidate puzzle. Candidates are
// rebuilt from the tag deltas and re-classified before they are emitted.
inline SinglePassResult single_pass_generate(const PartialLabeledBoard& pb, const SinglePassOptions& opts = {})
{
    SearchConfig cfg;
    cfg.tag_writes = true;
    cfg.propagators = opts.generator.propagators;
    cfg.node_limit = opts.node_limit;
    cfg.time_limit = opts.time_limit;
    SearchResult r = enumerate_solutions(pb, cfg);
    if (r.status == SearchStatus::Incomplete)
        throw ExhaustionRequired("single_pass_generate: enumeration was cut short by a budget cap");

    SinglePassResult out;
    std::map<std::uint64_t, std::size_t> occurrences;
    for (const auto& seq : r.tag_sequences)
        for (const auto& w : seq)
            ++occurrences[w.tag];

    std::set<Assignment> seen;
    for (std::size_t i = 0; i < r.solutions.size(); ++i) {
        PartialLabeledBoard board = pb;
        for (const auto& w : r.tag_sequences[i]) {
            board.assignment[w.cell] = w.label;
            if (occurrences[w.tag] != 1 || board.is_total() || !seen.insert(board.assignment).second)
                continue;
            if (classify(board).tag != ClassTag::UniqueSolution) {
                ++out.rejected;
                continue;
            }
            out.puzzles.push_back(annotate(board, r.solutions[i], opts.generator));
            if (detail::capped(out.puzzles, opts.generator))
                break;
        }
    }
    out.solutions = std::move(r.solutions);
    out.tag_sequences = std::move(r.tag_sequences);
    return out;
}

// ---------------------------------------------------------------------------
// Minimality

enum class Minimality { Minimal, NotMinimal, Unknown };

struct MinimalityBudget {
    std::size_t max_cells = 16;
    std::uint64_t max_candidates = 50'000'000;
};

struct MinimalityResult {
    Minimality verdict = Minimality::Unknown;
    std::optional<PartialLabeledBoard> witness; // a unique puzzle with fewer clues
    std::uint64_t candidates = 0;               // boards classified
};

// No puzzle of the same board, multiset and inscription has fewer clues.
// Adding solution clues keeps a puzzle unique, so only boards with exactly
// one clue fewer need to be scanned.
inline MinimalityResult is_minimal(const PartialLabeledBoard& puzzle, const MinimalityBudget& budget = {})
{
    MinimalityResult result;
    const std::size_t clues = puzzle.clue_count();
    const std::size_t fixed = puzzle.inscription ? puzzle.inscription->pairs.size() : 0;
    if (clues <= fixed) {
        result.verdict = Minimality::Minimal;
        return result;
    }
    const std::size_t pick = clues - 1 - fixed;

    std::vector<CellId> free;
    for (CellId c = 0; c < puzzle.cell_count(); ++c)
        if (!puzzle.inscribed(c))
            free.push_back(c);
    const auto labels = static_cast<LabelId>(puzzle.multiset.size());

    if (puzzle.cell_count() > budget.max_cells)
        return result;
    BigInt space = 1;
    for (std::size_t i = 0; i < pick; ++i)
        space = space * (free.size() - i) / (i + 1);
    for (std::size_t i = 0; i < pick; ++i)
        space *= labels;
    if (space > budget.max_candidates)
        return result;

    PartialLabeledBoard base(puzzle.board, puzzle.multiset, puzzle.inscription);
    PartialLabeledBoard work = base;
    std::vector<std::vector<int>> counts(puzzle.board->asterism_count(), std::vector<int>(labels, 0));
    for (CellId c = 0; c < work.cell_count(); ++c)
        if (auto l = work.assignment[c])
            for (AsterismId a : puzzle.board->asterisms_of(c))
                ++counts[a][*l];

    auto fits = [&](CellId c, LabelId l) {
        for (AsterismId a : puzzle.board->asterisms_of(c))
            if (counts[a][l] + 1 > puzzle.multiset.count(l))
                return false;
        return true;
    };
    auto place = [&](CellId c, LabelId l, int delta) {
        for (AsterismId a : puzzle.board->asterisms_of(c))
            counts[a][l] += delta;
        if (delta > 0)
            work.assignment[c] = l;
        else
            work.assignment[c].reset();
    };

    std::function<bool(std::size_t, std::size_t)> scan = [&](std::size_t from, std::size_t left) -> bool {
        if (left == 0) {
            ++result.candidates;
            if (classify(work).tag == ClassTag::UniqueSolution) {
                result.witness = work;
                return true;
            }
            return false;
        }
        for (std::size_t i = from; i + left <= free.size(); ++i) {
            const CellId c = free[i];
            for (LabelId l = 0; l < labels; ++l) {
                if (!fits(c, l))
                    continue;
                place(c, l, +1);
                const bool hit = scan(i + 1, left - 1);
                place(c, l, -1);
                if (hit)
                    return true;
            }
        }
        return false;
    };

    result.verdict = scan(0, pick) ? Minimality::NotMinimal : Minimality::Minimal;
    return result;
}

} // namespace latinp
