#pragma once

#include <string_view>
#include <vector>

#include "latinp/core_model.hpp"
#include "latinp/errors.hpp"
#include "latinp/proof.hpp"
#include "latinp/search.hpp"

namespace latinp {

enum class ClassTag {
    NotPLB,
    NotCompletable,
    UniqueSolution,
    MultipleSolutions,
    AlreadyLatinBoard,
    Indeterminate, // search budget ran out before the verdict was known
};

inline std::string_view to_string(ClassTag t)
{
    switch (t) {
    case ClassTag::NotPLB: return "NotPLB";
    case ClassTag::NotCompletable: return "NotCompletable";
    case ClassTag::UniqueSolution: return "UniqueSolution";
    case ClassTag::MultipleSolutions: return "MultipleSolutions";
    case ClassTag::AlreadyLatinBoard: return "AlreadyLatinBoard";
    case ClassTag::Indeterminate: return "Indeterminate";
    }
    return "?";
}

struct Classification {
    ClassTag tag = ClassTag::NotPLB;
    std::size_t solutions_found = 0;
    std::vector<PartialLabeledBoard> witnesses; // at most two
};

// Separates the solution-count buckets 0 / 1 / ≥2; two witnesses are enough,
// so the search stops at the second solution.
inline Classification classify(const PartialLabeledBoard& plb, SearchConfig cfg = {})
{
    Classification out;
    if (!is_partial_latin_board(plb))
        return out;
    if (plb.is_total() && is_latin_board(plb)) {
        out.tag = ClassTag::AlreadyLatinBoard;
        out.solutions_found = 1;
        out.witnesses.push_back(plb);
        return out;
    }
    cfg.limit = SolutionLimit::of(2);
    SearchResult r = enumerate_solutions(plb, cfg);
    out.solutions_found = r.solutions.size();
    out.witnesses = std::move(r.solutions);
    if (out.solutions_found >= 2)
        out.tag = ClassTag::MultipleSolutions;
    else if (r.status == SearchStatus::Incomplete)
        out.tag = ClassTag::Indeterminate;
    else
        out.tag = out.solutions_found == 1 ? ClassTag::UniqueSolution : ClassTag::NotCompletable;
    return out;
}

struct SolvedPuzzle {
    PartialLabeledBoard solution;
    Proof proof;
};

// Unique completion of a Latin puzzle with the proof that reaches it:
// propagation steps plus any search decisions on the path to the solution.
inline SolvedPuzzle solve_puzzle(const PartialLabeledBoard& puzzle, SearchConfig cfg = {})
{
    if (is_partial_latin_board(puzzle) && puzzle.is_total() && is_latin_board(puzzle))
        return {puzzle, {}};
    cfg.limit = SolutionLimit::of(2);
    cfg.record_proofs = true;
    SearchResult r = enumerate_solutions(puzzle, cfg);
    if (r.status == SearchStatus::Incomplete && r.solutions.size() < 2)
        throw BudgetExceeded("solve_puzzle: search budget exhausted");
    if (r.solutions.size() != 1)
        throw NotAPuzzle(r.solutions.empty() ? "input has no completion" : "input has several completions");
    return {std::move(r.solutions.front()), std::move(r.proofs.front())};
}

} // namespace latinp
