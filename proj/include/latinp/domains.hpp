#pragma once

#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latinp/core_model.hpp"

namespace latinp {

using BigInt = boost::multiprecision::cpp_int;

// Candidate labels for every empty cell of a partial labeled board.
//
// Storage covers all board cells so attrition can read clues uniformly: a clue
// cell holds the singleton of its label. Only the empty cells (the keys) take
// part in comparisons and in the solution-space size.
class BoardDomain {
public:
    BoardDomain() = default;

    BoardDomain(std::vector<LabelSet> sets, std::vector<CellId> keys) : sets_(std::move(sets)), keys_(std::move(keys))
    {
    }

    const std::vector<CellId>& keys() const { return keys_; }
    const std::vector<LabelSet>& sets() const { return sets_; }
    std::vector<LabelSet>& sets() { return sets_; }
    LabelSet at(CellId c) const { return sets_[c]; }
    void set(CellId c, LabelSet s) { sets_[c] = s; }

    bool wiped_out() const
    {
        for (LabelSet s : sets_)
            if (s.empty())
                return true;
        return false;
    }

    // Every key cell reduced to one candidate.
    bool solved() const
    {
        for (CellId c : keys_)
            if (!sets_[c].is_singleton())
                return false;
        return true;
    }

    bool operator==(const BoardDomain&) const = default;

private:
    std::vector<LabelSet> sets_;
    std::vector<CellId> keys_;
};

inline BoardDomain initial_domain(const PartialLabeledBoard& plb)
{
    if (!is_partial_latin_board(plb))
        throw std::invalid_argument("initial_domain: input is not a partial Latin board");
    std::vector<LabelSet> sets(plb.cell_count());
    std::vector<CellId> keys;
    const LabelSet support = plb.multiset.support();
    for (CellId c = 0; c < plb.cell_count(); ++c) {
        if (auto l = plb.assignment[c]) {
            sets[c] = LabelSet::single(*l);
        } else {
            sets[c] = support;
            keys.push_back(c);
        }
    }
    return BoardDomain(std::move(sets), std::move(keys));
}

inline BigInt solution_space_size(const BoardDomain& d)
{
    BigInt size = 1;
    for (CellId c : d.keys())
        size *= d.at(c).size();
    return size;
}

// True when `stronger` is pointwise included in `weaker`.
inline bool is_stronger(const BoardDomain& stronger, const BoardDomain& weaker)
{
    if (stronger.keys() != weaker.keys())
        throw std::invalid_argument("is_stronger: domains are keyed by different cells");
    for (CellId c : stronger.keys())
        if (!stronger.at(c).subset_of(weaker.at(c)))
            return false;
    return true;
}

} // namespace latinp
