#include "catch.hpp"

#include <random>
#include <set>

#include "fixtures.hpp"
#include "latinp/latinp.hpp"
#include "planted.hpp"

using namespace latinp;

namespace {

PartialLabeledBoard line(std::size_t n, LabelMultiset m)
{
    std::vector<CellId> cells(n);
    for (CellId c = 0; c < n; ++c)
        cells[c] = c;
    auto board = std::make_shared<const Board>("line", n, std::vector<std::vector<CellId>>{cells});
    return PartialLabeledBoard(board, std::move(m));
}

BoardDomain domain_of(const PartialLabeledBoard& plb, std::vector<LabelSet> sets)
{
    auto d = initial_domain(plb);
    return BoardDomain(std::move(sets), d.keys());
}

LabelSet of(std::initializer_list<int> ids)
{
    LabelSet s;
    for (int i : ids)
        s.insert(static_cast<LabelId>(i));
    return s;
}

// Every (cell, label) that occurs in some solution.
std::vector<LabelSet> solution_labels(const PartialLabeledBoard& plb)
{
    std::vector<LabelSet> out(plb.cell_count());
    for (const auto& s : oracle::enumerate(oracle::from(plb)))
        for (CellId c = 0; c < s.size(); ++c)
            out[c].insert(static_cast<LabelId>(s[c]));
    return out;
}

} // namespace

TEST_CASE("count saturation: a saturated label leaves the other cells")
{
    auto plb = line(3, LabelMultiset({{"1", 2}, {"2", 1}}));
    plb.assignment[0] = 0;
    plb.assignment[1] = 0;
    auto out = prop_count_saturation(plb, initial_domain(plb));
    CHECK(out.domain.at(2) == of({1}));
    CHECK(out.placements == std::vector<Placement>{{2, 1}});
    REQUIRE(out.eliminations.size() == 1);
    CHECK(out.eliminations[0] == AttributedElimination{2, 0, "count_saturation"});
    CHECK_FALSE(out.wipeout);
}

TEST_CASE("count saturation on a repeated-label sub-square")
{
    auto plb = catalog::ripeto(catalog::sudoku_boxes(3, 3), LabelMultiset({{"2", 2}, {"3", 3}, {"4", 4}}));
    // Bottom-right box: cells 60-62, 69-71, 78-80. Two 2s and three 3s.
    const std::vector<std::pair<CellId, LabelId>> clues{{60, 0}, {61, 0}, {62, 1}, {69, 1}, {70, 1}};
    for (auto [c, l] : clues)
        plb.assignment[c] = l;
    auto out = prop_count_saturation(plb, initial_domain(plb));
    for (CellId c : {71u, 78u, 79u, 80u})
        CHECK(out.domain.at(c) == of({2}));
}

TEST_CASE("count saturation leaves unsaturated domains alone")
{
    auto plb = catalog::sudoku_boxes(2, 2);
    auto d = initial_domain(plb);
    auto out = prop_count_saturation(plb, d);
    CHECK(out.domain == d);
    CHECK(out.eliminations.empty());
}

TEST_CASE("required count forces the only hosts")
{
    SECTION("single host")
    {
        auto plb = line(3, LabelMultiset({{"1", 1}, {"2", 2}}));
        auto out = prop_required_count(plb, domain_of(plb, {of({0, 1}), of({1}), of({1})}));
        CHECK(out.domain.at(0) == of({0}));
        CHECK(out.placements == std::vector<Placement>{{0, 0}});
    }
    SECTION("two hosts for a label needed twice")
    {
        auto plb = line(4, LabelMultiset({{"1", 2}, {"2", 2}}));
        auto out = prop_required_count(plb, domain_of(plb, {of({0, 1}), of({0, 1}), of({1}), of({1})}));
        CHECK(out.domain.at(0) == of({0}));
        CHECK(out.domain.at(1) == of({0}));
    }
    SECTION("too few hosts is a wipeout")
    {
        auto plb = line(3, LabelMultiset({{"1", 2}, {"2", 1}}));
        auto out = prop_required_count(plb, domain_of(plb, {of({0, 1}), of({1}), of({1})}));
        CHECK(out.wipeout);
        CHECK(out.domain.wiped_out());
    }
}

TEST_CASE("required count agrees with every Shidoku grid on a one-gap row")
{
    const auto grids = oracle::enumerate(oracle::from(catalog::sudoku_boxes(2, 2)));
    REQUIRE(grids.size() == 288);
    for (std::size_t g = 0; g < grids.size(); g += 7)
        for (CellId gap = 0; gap < 4; ++gap) {
            auto plb = catalog::sudoku_boxes(2, 2);
            for (CellId c = 0; c < 4; ++c)
                if (c != gap)
                    plb.assignment[c] = static_cast<LabelId>(grids[g][c]);
            auto out = prop_required_count(plb, initial_domain(plb));
            CHECK(out.domain.at(gap) == LabelSet::single(static_cast<LabelId>(grids[g][gap])));
        }
}

TEST_CASE("intersection: pointing candidates")
{
    auto plb = catalog::sudoku_boxes(3, 3);
    auto d = initial_domain(plb);
    for (CellId c : {9u, 10u, 11u, 18u, 19u, 20u}) {
        auto s = d.at(c);
        s.erase(4);
        d.set(c, s);
    }
    auto out = prop_intersection(plb, d);
    for (CellId c = 3; c < 9; ++c)
        CHECK_FALSE(out.domain.at(c).contains(4));
    for (CellId c = 0; c < 3; ++c)
        CHECK(out.domain.at(c).contains(4));
    for (const auto& e : out.eliminations) {
        CHECK(e.label == 4);
        CHECK(e.propagator == "intersection");
    }
}

TEST_CASE("intersection stays silent when the bound is not met")
{
    auto plb = catalog::ripeto(catalog::sudoku_boxes(2, 2), LabelMultiset({{"1", 2}, {"2", 2}}));
    auto d = initial_domain(plb);
    d.set(4, of({0}));
    d.set(5, of({1}));
    auto out = prop_intersection(plb, d);
    CHECK(out.domain.at(2).contains(0));
    CHECK(out.domain.at(3).contains(0));
}

TEST_CASE("intersection needs a second asterism")
{
    auto plb = line(3, LabelMultiset::distinct(3));
    auto d = domain_of(plb, {of({0}), of({0, 1, 2}), of({1, 2})});
    CHECK(prop_intersection(plb, d).domain == d);
}

TEST_CASE("propagators are sound and keep every solution label")
{
    std::mt19937_64 rng(21);
    for (const Propagator* p : shipped_propagators()) {
        CAPTURE(p->name());
        for (int t = 0; t < 1500; ++t) {
            auto plb = random_plb(rng);
            auto d = random_subdomain(initial_domain(plb), rng, 0.85);
            auto out = apply(*p, plb, d);
            REQUIRE(is_stronger(out.domain, d));
            CHECK(out.wipeout == out.domain.wiped_out());
            for (auto pl : out.placements)
                CHECK(out.domain.at(pl.cell) == LabelSet::single(pl.label));
        }
        for (int t = 0; t < 150; ++t) {
            auto plb = fixtures::random_case(rng);
            const auto sols = solution_labels(plb);
            // Start from the certified initial domain, or a random shrink that
            // still holds every solution label.
            auto d = initial_domain(plb);
            if (t % 2)
                for (CellId c : d.keys()) {
                    auto shrunk = random_subdomain(d, rng, 0.6).at(c);
                    shrunk = shrunk | sols[c];
                    d.set(c, shrunk);
                }
            auto out = apply(*p, plb, d);
            for (CellId c : d.keys())
                CHECK(sols[c].subset_of(out.domain.at(c)));
        }
    }
}

TEST_CASE("shipped propagators pass the monotonicity check")
{
    for (const Propagator* p : shipped_propagators()) {
        CAPTURE(p->name());
        CHECK(p->monotonic());
        auto report = check_monotonic(*p, 1000, 99);
        CHECK(report.trials == 1000);
        if (!report.passed())
            FAIL(report.counterexamples.front().describe());
    }
    CHECK(count_saturation().weight() == 1);
    CHECK(required_count().weight() == 2);
    CHECK(intersection().weight() == 4);
}

TEST_CASE("monotonicity check catches a planted defect")
{
    planted::EvenSizeSaturation bad;
    auto report = check_monotonic(bad, 1000, 99);
    REQUIRE_FALSE(report.passed());
    const auto& ce = report.counterexamples.front();
    CHECK(is_stronger(ce.stronger, ce.weaker));
    CHECK_FALSE(ce.stronger_out.at(ce.cell).subset_of(ce.weaker_out.at(ce.cell)));
    CHECK(ce.describe().find("D'") != std::string::npos);

    CHECK(check_monotonic(bad, 0, 1).counterexamples.empty());
}

TEST_CASE("fixpoint is idempotent, confluent and records attributed steps")
{
    std::mt19937_64 rng(8);
    const auto props = shipped_propagators();
    for (int t = 0; t < 60; ++t) {
        auto plb = fixtures::random_case(rng);
        auto d0 = initial_domain(plb);
        auto once = propagate_fixpoint(plb, d0, props);
        auto twice = propagate_fixpoint(plb, once.outcome.domain, props);
        CHECK(twice.outcome.domain == once.outcome.domain);
        if (!once.outcome.wipeout)
            CHECK(twice.proof.empty());
        for (int s = 0; s < 5; ++s) {
            std::mt19937_64 schedule(rng());
            CHECK(propagate_fixpoint(plb, d0, props, &schedule).outcome.domain == once.outcome.domain);
        }
        std::uint64_t last = 0;
        for (const auto& step : once.proof.steps) {
            CHECK(step.serial > last);
            last = step.serial;
            CHECK((step.actor == "count_saturation" || step.actor == "required_count" || step.actor == "intersection"));
        }
    }
}

TEST_CASE("fixpoint detects a propagation-visible contradiction")
{
    auto plb = line(3, LabelMultiset({{"1", 1}, {"2", 2}}));
    auto out = propagate_fixpoint(plb, domain_of(plb, {of({0}), of({0}), of({0, 1})}), shipped_propagators());
    CHECK(out.outcome.wipeout);
    for (CellId c = 0; c < 3; ++c)
        CHECK(out.outcome.domain.at(c).empty());
}

TEST_CASE("an easy Shidoku puzzle falls to the two cheapest propagators")
{
    const PropagatorSet cheap{&count_saturation(), &required_count()};
    GeneratorOptions opts;
    opts.acceptance = Acceptance::Fair;
    opts.propagators = cheap;
    opts.annotate = false;
    opts.seed = 2;
    std::mt19937_64 rng(2);
    auto lb = fixtures::random_latin_board(catalog::sudoku_boxes(2, 2), rng);
    auto chain = puzzles_from_latin_board(lb, opts);
    REQUIRE(!chain.empty());
    const auto& puzzle = chain.back().puzzle;
    CHECK(oracle::count(puzzle) == 1);
    auto fp = propagate_fixpoint(puzzle, initial_domain(puzzle), cheap);
    CHECK(fp.outcome.domain.solved());
    CHECK_FALSE(fp.outcome.wipeout);
}
