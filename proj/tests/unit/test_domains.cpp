#include "catch.hpp"

#include "fixtures.hpp"
#include "latinp/latinp.hpp"

using namespace latinp;

namespace {

// A 9x9 board with a {2:2, 3:3, 4:4} multiset and its first 44 cells given,
// so 37 cells are empty.
PartialLabeledBoard ripeto_37()
{
    auto plb = catalog::ripeto(catalog::sudoku_boxes(3, 3), LabelMultiset({{"2", 2}, {"3", 3}, {"4", 4}}));
    auto solved = enumerate_solutions(plb, fixtures::first_only()).solutions.at(0);
    for (CellId c = 0; c < 81; ++c)
        if (c < 44)
            plb.assignment[c] = solved.assignment[c];
    return plb;
}

} // namespace

TEST_CASE("initial domain holds the support on every empty cell")
{
    auto plb = ripeto_37();
    REQUIRE(plb.empty_cells().size() == 37);
    auto d = initial_domain(plb);
    CHECK(d.keys().size() == 37);
    for (CellId c : d.keys())
        CHECK(d.at(c) == plb.multiset.support());
    CHECK(solution_space_size(d) == BigInt("450283905890997363"));
}

TEST_CASE("domain edge cases")
{
    auto sq = catalog::latin_square(2);
    auto full = fixtures::with_values(sq, {0, 1, 1, 0});
    auto d = initial_domain(full);
    CHECK(d.keys().empty());
    CHECK(solution_space_size(d) == 1);

    auto one = fixtures::with_values(sq, {0, 1, 1, -1});
    auto d1 = initial_domain(one);
    REQUIRE(d1.keys() == std::vector<CellId>{3});
    CHECK(d1.at(3) == LabelSet::first_n(2));

    auto wiped = d1;
    wiped.set(3, LabelSet{});
    CHECK(wiped.wiped_out());
    CHECK(solution_space_size(wiped) == 0);

    auto bad = sq;
    bad.assignment[0] = 0;
    bad.assignment[1] = 0;
    CHECK_THROWS_AS(initial_domain(bad), std::invalid_argument);
}

TEST_CASE("is_stronger is pointwise inclusion")
{
    auto sq = catalog::latin_square(2);
    auto d = initial_domain(sq);
    CHECK(is_stronger(d, d));

    auto d1 = d;
    d1.set(0, LabelSet::single(1));
    CHECK(is_stronger(d1, d));
    CHECK_FALSE(is_stronger(d, d1));

    auto a = d, b = d;
    a.set(0, LabelSet::single(0));
    b.set(0, LabelSet::single(1));
    a.set(1, LabelSet::first_n(2));
    b.set(1, LabelSet::single(0));
    CHECK_FALSE(is_stronger(a, b));
    CHECK_FALSE(is_stronger(b, a));

    auto other = initial_domain(fixtures::with_values(sq, {0, -1, -1, -1}));
    CHECK_THROWS_AS(is_stronger(d, other), std::invalid_argument);
}

TEST_CASE("stronger domains never have larger solution spaces")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        auto plb = random_plb(rng);
        auto d = random_subdomain(initial_domain(plb), rng);
        auto d2 = random_subdomain(d, rng);
        REQUIRE(is_stronger(d2, d));
        CHECK(solution_space_size(d2) <= solution_space_size(d));
    }
}

TEST_CASE("propagated domains are stronger than the initial domain")
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        auto plb = fixtures::random_case(rng);
        auto d0 = initial_domain(plb);
        auto fp = propagate_fixpoint(plb, d0, shipped_propagators());
        CHECK(is_stronger(fp.outcome.domain, d0));
    }
}
