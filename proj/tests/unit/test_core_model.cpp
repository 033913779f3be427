#include "catch.hpp"

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "latinp/latinp.hpp"

using namespace latinp;

namespace {

PartialLabeledBoard line3(LabelMultiset m, std::vector<int> values)
{
    auto board = std::make_shared<const Board>("line", 3, std::vector<std::vector<CellId>>{{0, 1, 2}});
    return fixtures::with_values(PartialLabeledBoard(board, std::move(m)), values);
}

} // namespace

TEST_CASE("label multiset rejects malformed entries")
{
    CHECK_THROWS_AS(LabelMultiset(std::vector<std::pair<std::string, int>>{}), std::invalid_argument);
    CHECK_THROWS_AS(LabelMultiset({{"a", 0}}), std::invalid_argument);
    CHECK_THROWS_AS(LabelMultiset({{"", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(LabelMultiset({{"a", 1}, {"a", 2}}), std::invalid_argument);

    LabelMultiset m({{"1", 3}, {"2", 3}, {"3", 3}});
    CHECK(m.k() == 9);
    CHECK(m.size() == 3);
    CHECK(m.support().size() == 3);
    CHECK(m.find("2") == LabelId{1});
    CHECK_FALSE(m.find("4"));
    CHECK(LabelMultiset::distinct(10).name(9) == "A");
}

TEST_CASE("validate_board reports structural violations")
{
    SECTION("standard sudoku is clean")
    {
        auto s = catalog::sudoku_boxes(3, 3);
        CHECK(s.board->asterism_count() == 27);
        CHECK(validate_board(*s.board, 9).ok());
    }
    SECTION("one cell, one asterism, k = 1")
    {
        Board b("t", 1, {{0}});
        CHECK(validate_board(b, 1).ok());
    }
    SECTION("two asterisms of size 2 with k = 3")
    {
        Board b("t", 3, {{0, 1}, {1, 2}});
        auto r = validate_board(b, 3);
        REQUIRE(r.violations.size() == 2);
        CHECK(std::holds_alternative<AsterismWrongSize>(r.violations[0]));
        CHECK(std::holds_alternative<AsterismWrongSize>(r.violations[1]));
    }
    SECTION("uncovered cell and repeated cell")
    {
        Board b("t", 3, {{0, 0}});
        auto r = validate_board(b, 2);
        CHECK(std::count(r.violations.begin(), r.violations.end(), Violation{DuplicateCellInAsterism{0}}) == 1);
        CHECK(std::count(r.violations.begin(), r.violations.end(), Violation{CellNotCovered{1}}) == 1);
        CHECK(std::count(r.violations.begin(), r.violations.end(), Violation{CellNotCovered{2}}) == 1);
    }
    SECTION("duplicate asterisms collapse with a warning")
    {
        Board b("t", 2, {{0, 1}, {1, 0}});
        auto r = validate_board(b, 2);
        CHECK(r.ok());
        REQUIRE(r.warnings.size() == 1);
        CHECK(r.warnings[0] == DuplicateAsterismWarning{1, 0});
        CHECK(b.asterism_count() == 1);
    }
    SECTION("cell out of range is rejected at construction")
    {
        CHECK_THROWS(Board("t", 2, {{0, 2}}));
    }
}

TEST_CASE("validate_board does not depend on asterism order")
{
    std::mt19937_64 rng(5);
    std::vector<std::vector<CellId>> cons{{0, 1, 2}, {2, 3}, {3, 3, 4}, {0, 4, 1}, {5}};
    auto key = [](const ValidationReport& r, const std::vector<std::vector<CellId>>& c) {
        // Map violations back to asterism contents so indices do not matter.
        std::vector<std::string> out;
        for (const auto& v : r.violations)
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    std::string s;
                    if constexpr (std::is_same_v<T, CellNotCovered>)
                        s = "cover " + std::to_string(x.cell);
                    else {
                        auto cells = c[x.index];
                        std::sort(cells.begin(), cells.end());
                        for (auto cell : cells)
                            s += std::to_string(cell) + ",";
                        s += std::is_same_v<T, AsterismWrongSize> ? " size" : " dup";
                    }
                    out.push_back(s);
                },
                v);
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto reference = key(validate_board(Board("t", 7, cons), 3), cons);
    CHECK(!reference.empty());
    for (int i = 0; i < 20; ++i) {
        std::shuffle(cons.begin(), cons.end(), rng);
        CHECK(key(validate_board(Board("t", 7, cons), 3), cons) == reference);
    }
}

TEST_CASE("partial Latin board checks count against the multiset")
{
    LabelMultiset m({{"1", 2}, {"2", 1}});
    CHECK(is_partial_latin_board(line3(m, {0, 0, -1})));
    CHECK_FALSE(is_partial_latin_board(line3(m, {1, -1, 1})));

    auto sudoku = catalog::sudoku_boxes(3, 3);
    sudoku.assignment[0] = 4;
    sudoku.assignment[8] = 4;
    CHECK_FALSE(is_partial_latin_board(sudoku));
}

TEST_CASE("Latin board needs a total assignment with exact counts")
{
    auto sq = catalog::latin_square(2);
    CHECK(is_latin_board(fixtures::with_values(sq, {0, 1, 1, 0})));
    CHECK_FALSE(is_latin_board(fixtures::with_values(sq, {0, 1, 0, 1})));
    CHECK_FALSE(is_latin_board(fixtures::with_values(sq, {0, 1, 1, -1})));
}

TEST_CASE("Latin boards are partial Latin boards and PLBs survive clue removal")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        auto plb = fixtures::random_case(rng);
        if (is_latin_board(plb))
            CHECK(is_partial_latin_board(plb));
        REQUIRE(is_partial_latin_board(plb));
        for (CellId c : plb.clue_cells()) {
            auto fewer = plb;
            fewer.assignment[c].reset();
            CHECK(is_partial_latin_board(fewer));
        }
    }
    auto sq = catalog::latin_square(3);
    for (const auto& s : enumerate_solutions(sq).solutions)
        CHECK(is_partial_latin_board(s));
}

TEST_CASE("inscription pre-fills its cells")
{
    auto base = catalog::latin_square(3);
    Inscription ins{{{0, 2}, {4, 2}}};
    auto p = catalog::inscripted(base, ins);
    CHECK(p.assignment[0] == LabelId{2});
    CHECK(p.assignment[4] == LabelId{2});
    CHECK(p.inscribed(0));
    CHECK_FALSE(p.inscribed(1));
    CHECK(p.clue_count() == 2);
}
