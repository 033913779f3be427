#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latinp/board_catalog.hpp"
#include "latinp/core_model.hpp"
#include "latinp/domains.hpp"
#include "latinp/propagation.hpp"

namespace latinp {

// Small boards used for randomized checks: Latin squares of order 2-4,
// Shidoku, and two repeated-label variants.
inline std::vector<PartialLabeledBoard> small_boards()
{
    using catalog::latin_square;
    return {
        latin_square(2),
        latin_square(3),
        latin_square(4),
        catalog::sudoku_boxes(2, 2),
        latin_square(3, LabelMultiset({{"1", 2}, {"2", 1}})),
        catalog::ripeto(catalog::sudoku_boxes(2, 2), LabelMultiset({{"1", 2}, {"2", 2}})),
    };
}

// Random partial Latin board on one of the small boards: cells are visited in
// random order and receive a random label that keeps every count legal.
inline PartialLabeledBoard random_plb(std::mt19937_64& rng, double fill = 0.35)
{
    static const std::vector<PartialLabeledBoard> boards = small_boards();
    PartialLabeledBoard plb = boards[rng() % boards.size()];
    const Board& b = *plb.board;
    std::vector<std::vector<int>> counts(b.asterism_count(), std::vector<int>(plb.multiset.size(), 0));
    std::vector<CellId> order(plb.cell_count());
    for (CellId c = 0; c < order.size(); ++c)
        order[c] = c;
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution take(fill);
    for (CellId c : order) {
        if (!take(rng))
            continue;
        const auto l = static_cast<LabelId>(rng() % plb.multiset.size());
        bool ok = true;
        for (AsterismId a : b.asterisms_of(c))
            ok = ok && counts[a][l] < plb.multiset.count(l);
        if (!ok)
            continue;
        for (AsterismId a : b.asterisms_of(c))
            ++counts[a][l];
        plb.assignment[c] = l;
    }
    return plb;
}

// Keeps each candidate of each empty cell with probability keep; a cell may
// end up empty.
inline BoardDomain random_subdomain(const BoardDomain& d, std::mt19937_64& rng, double keep = 0.7)
{
    BoardDomain out = d;
    std::bernoulli_distribution coin(keep);
    for (CellId c : d.keys()) {
        LabelSet s;
        for (LabelId l : d.at(c))
            if (coin(rng))
                s.insert(l);
        out.set(c, s);
    }
    return out;
}

inline std::string describe_domain(const BoardDomain& d, const LabelMultiset& m)
{
    std::ostringstream out;
    for (CellId c : d.keys()) {
        out << c << ":{";
        bool first = true;
        for (LabelId l : d.at(c)) {
            out << (first ? "" : ",") << m.name(l);
            first = false;
        }
        out << "} ";
    }
    return out.str();
}

struct MonotonicityCounterexample {
    PartialLabeledBoard plb;
    BoardDomain weaker;   // D
    BoardDomain stronger; // D' with D' ⊆ D
    BoardDomain weaker_out;
    BoardDomain stronger_out;
    CellId cell = 0; // first cell where apply(D') ⊄ apply(D)

    std::string describe() const
    {
        std::ostringstream out;
        out << "board " << plb.board->name() << ", cell " << cell << '\n'
            << "  D       = " << describe_domain(weaker, plb.multiset) << '\n'
            << "  D'      = " << describe_domain(stronger, plb.multiset) << '\n'
            << "  p(D)    = " << describe_domain(weaker_out, plb.multiset) << '\n'
            << "  p(D')   = " << describe_domain(stronger_out, plb.multiset) << '\n';
        return out.str();
    }
};

struct MonotonicityReport {
    std::size_t trials = 0;
    std::vector<MonotonicityCounterexample> counterexamples;

    bool passed() const { return counterexamples.empty(); }
};

// Random pairs D' ⊆ D over random small partial Latin boards; every pair with
// p(D') ⊄ p(D) is reported.
inline MonotonicityReport check_monotonic(const Propagator& p, std::size_t trials, std::uint64_t seed)
{
    MonotonicityReport report;
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        ++report.trials;
        const PartialLabeledBoard plb = random_plb(rng);
        const BoardDomain d = random_subdomain(initial_domain(plb), rng, 0.8);
        const BoardDomain d2 = random_subdomain(d, rng, 0.8);
        const BoardDomain out = apply(p, plb, d).domain;
        const BoardDomain out2 = apply(p, plb, d2).domain;
        for (CellId c : d.keys()) {
            if (!out2.at(c).subset_of(out.at(c))) {
                report.counterexamples.push_back({plb, d, d2, out, out2, c});
                break;
            }
        }
    }
    return report;
}

} // namespace latinp
