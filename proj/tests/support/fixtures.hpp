#pragma once

#include <random>
#include <vector>

#include "latinp/latinp.hpp"
#include "oracle.hpp"

namespace fixtures {

using namespace latinp;

inline PartialLabeledBoard with_values(PartialLabeledBoard plb, const std::vector<int>& values)
{
    for (CellId c = 0; c < values.size(); ++c)
        if (values[c] >= 0)
            plb.assignment[c] = static_cast<LabelId>(values[c]);
        else
            plb.assignment[c].reset();
    return plb;
}

// A random Latin board of the given empty board, drawn from the oracle's
// complete list.
inline PartialLabeledBoard random_latin_board(const PartialLabeledBoard& empty, std::mt19937_64& rng)
{
    auto all = oracle::enumerate(oracle::from(empty));
    return with_values(empty, all[rng() % all.size()]);
}

// Keeps each clue of a Latin board with probability keep.
inline PartialLabeledBoard thin(PartialLabeledBoard lb, std::mt19937_64& rng, double keep)
{
    std::bernoulli_distribution coin(keep);
    for (CellId c = 0; c < lb.cell_count(); ++c)
        if (!lb.inscribed(c) && !coin(rng))
            lb.assignment[c].reset();
    return lb;
}

// Mix of arbitrary partial Latin boards and thinned Latin boards, so all
// three solution-count buckets show up.
inline PartialLabeledBoard random_case(std::mt19937_64& rng)
{
    static const auto boards = small_boards();
    if (rng() % 2 == 0)
        return random_plb(rng, 0.2 + 0.5 * std::uniform_real_distribution<>(0, 1)(rng));
    const auto& b = boards[rng() % boards.size()];
    return thin(random_latin_board(b, rng), rng, std::uniform_real_distribution<>(0.2, 0.8)(rng));
}

// A small Shidoku puzzle that plain count saturation solves only when each
// row is looked at before column 0 or the top-left box.
inline PartialLabeledBoard order_sensitive_shidoku()
{
    auto plb = catalog::sudoku_boxes(2, 2);
    const int rows[4][4] = {{0, 1, 2, 3}, {2, 3, 0, 1}, {1, 0, 3, 2}, {3, 2, 1, 0}};
    for (CellId c = 0; c < 16; ++c)
        plb.assignment[c] = static_cast<LabelId>(rows[c / 4][c % 4]);
    for (CellId c : {0u, 4u, 9u, 14u})
        plb.assignment[c].reset();
    return plb;
}

} // namespace fixtures

namespace fixtures {

inline SearchConfig first_only()
{
    SearchConfig cfg;
    cfg.limit = SolutionLimit::of(1);
    return cfg;
}

} // namespace fixtures
