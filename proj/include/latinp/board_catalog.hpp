#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "latinp/core_model.hpp"

namespace latinp::catalog {

// Rows and columns of an n×n grid, cells numbered row-major.
inline std::vector<std::vector<CellId>> grid_lines(std::size_t n)
{
    std::vector<std::vector<CellId>> lines;
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<CellId> row;
        for (std::size_t c = 0; c < n; ++c)
            row.push_back(static_cast<CellId>(r * n + c));
        lines.push_back(std::move(row));
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<CellId> col;
        for (std::size_t r = 0; r < n; ++r)
            col.push_back(static_cast<CellId>(r * n + c));
        lines.push_back(std::move(col));
    }
    return lines;
}

// The rows × cols sub-rectangles tiling an (rows·cols)² grid.
inline std::vector<std::vector<CellId>> boxes(std::size_t rows, std::size_t cols)
{
    const std::size_t n = rows * cols;
    std::vector<std::vector<CellId>> out;
    for (std::size_t br = 0; br < cols; ++br)
        for (std::size_t bc = 0; bc < rows; ++bc) {
            std::vector<CellId> box;
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    box.push_back(static_cast<CellId>((br * rows + r) * n + bc * cols + c));
            out.push_back(std::move(box));
        }
    return out;
}

inline void check_multiset(const LabelMultiset& m, std::size_t k)
{
    if (static_cast<std::size_t>(m.k()) != k)
        throw std::invalid_argument("multiset total " + std::to_string(m.k()) + " differs from asterism size " +
                                    std::to_string(k));
}

inline PartialLabeledBoard latin_square(std::size_t n, std::optional<LabelMultiset> multiset = std::nullopt)
{
    if (n == 0 || n > static_cast<std::size_t>(kMaxLabels))
        throw std::invalid_argument("latin_square: order out of range");
    auto m = multiset ? *multiset : LabelMultiset::distinct(static_cast<int>(n));
    check_multiset(m, n);
    auto board = std::make_shared<const Board>("latin" + std::to_string(n), n * n, grid_lines(n));
    return PartialLabeledBoard(std::move(board), std::move(m));
}

// Rows, columns and rows×cols boxes. sudoku_boxes(2,2) is Shidoku and
// sudoku_boxes(3,3) is Sudoku.
inline PartialLabeledBoard sudoku_boxes(std::size_t rows, std::size_t cols,
                                        std::optional<LabelMultiset> multiset = std::nullopt)
{
    if (rows == 0 || cols == 0 || rows * cols > static_cast<std::size_t>(kMaxLabels))
        throw std::invalid_argument("sudoku_boxes: box dimensions out of range");
    const std::size_t n = rows * cols;
    auto m = multiset ? *multiset : LabelMultiset::distinct(static_cast<int>(n));
    check_multiset(m, n);
    auto asterisms = grid_lines(n);
    for (auto& b : boxes(rows, cols))
        asterisms.push_back(std::move(b));
    std::string name = rows == 2 && cols == 2 ? "shidoku"
                       : rows == 3 && cols == 3
                           ? "sudoku"
                           : "sudoku" + std::to_string(rows) + "x" + std::to_string(cols);
    auto board = std::make_shared<const Board>(std::move(name), n * n, std::move(asterisms));
    return PartialLabeledBoard(std::move(board), std::move(m));
}

// Latin square plus a partition into n regions of n cells; region[i] is the
// region id of cell i.
inline PartialLabeledBoard gerechte(std::size_t n, const std::vector<std::size_t>& region,
                                    std::optional<LabelMultiset> multiset = std::nullopt)
{
    if (n == 0 || region.size() != n * n)
        throw std::invalid_argument("gerechte: partition must label all n*n cells");
    std::vector<std::vector<CellId>> regions(n);
    for (CellId c = 0; c < region.size(); ++c) {
        if (region[c] >= n)
            throw std::invalid_argument("gerechte: region id out of range");
        regions[region[c]].push_back(c);
    }
    for (const auto& r : regions)
        if (r.size() != n)
            throw std::invalid_argument("gerechte: every region needs exactly n cells");
    auto m = multiset ? *multiset : LabelMultiset::distinct(static_cast<int>(n));
    check_multiset(m, n);
    auto asterisms = grid_lines(n);
    for (auto& r : regions)
        asterisms.push_back(std::move(r));
    auto board = std::make_shared<const Board>("gerechte" + std::to_string(n), n * n, std::move(asterisms));
    return PartialLabeledBoard(std::move(board), std::move(m));
}

// Adds caller-given asterisms (windows) to a base board, keeping its clues.
inline PartialLabeledBoard extra_windows(const PartialLabeledBoard& base, std::vector<std::vector<CellId>> windows,
                                         std::string name = {})
{
    const auto k = static_cast<std::size_t>(base.multiset.k());
    auto asterisms = base.board->constellation();
    for (auto& w : windows) {
        if (w.size() != k)
            throw std::invalid_argument("extra_windows: window size differs from k");
        asterisms.push_back(std::move(w));
    }
    auto board = std::make_shared<const Board>(name.empty() ? base.board->name() + "+windows" : std::move(name),
                                               base.board->cell_count(), std::move(asterisms));
    PartialLabeledBoard out(std::move(board), base.multiset, base.inscription);
    out.assignment = base.assignment;
    return out;
}

// Sudoku with the four extra 3×3 windows at rows/cols 1-3 and 5-7.
inline PartialLabeledBoard windoku()
{
    std::vector<std::vector<CellId>> windows;
    for (std::size_t top : {1, 5})
        for (std::size_t left : {1, 5}) {
            std::vector<CellId> w;
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c)
                    w.push_back(static_cast<CellId>((top + r) * 9 + left + c));
            windows.push_back(std::move(w));
        }
    return extra_windows(sudoku_boxes(3, 3), std::move(windows), "windoku");
}

// Same topology, different k-multiset (repeated labels allowed).
inline PartialLabeledBoard ripeto(const PartialLabeledBoard& base, LabelMultiset multiset)
{
    for (const auto& a : base.board->constellation())
        check_multiset(multiset, a.size());
    auto board = std::make_shared<const Board>(base.board->name() + "-ripeto", base.board->cell_count(),
                                               base.board->constellation());
    return PartialLabeledBoard(std::move(board), std::move(multiset));
}

// The Sudoku board over {1,1,1,2,2,2,3,3,3}.
inline PartialLabeledBoard sudoku_ripeto()
{
    return ripeto(sudoku_boxes(3, 3), LabelMultiset({{"1", 3}, {"2", 3}, {"3", 3}}));
}

// Pre-fills the inscription cells; they stay clues of every derived puzzle.
inline PartialLabeledBoard inscripted(const PartialLabeledBoard& base, Inscription inscription)
{
    PartialLabeledBoard out(base.board, base.multiset, std::move(inscription));
    for (CellId c = 0; c < base.cell_count(); ++c)
        if (base.assignment[c] && !out.assignment[c])
            out.assignment[c] = base.assignment[c];
    return out;
}

// ---------------------------------------------------------------------------

struct LatinSquareSpec {
    std::size_t order;
};
struct SudokuBoxesSpec {
    std::size_t rows;
    std::size_t cols;
};
struct GerechteSpec {
    std::size_t order;
    std::vector<std::size_t> region;
};
struct ExtraWindowsSpec {
    std::size_t rows;
    std::size_t cols;
    std::vector<std::vector<CellId>> windows;
};

using Family = std::variant<LatinSquareSpec, SudokuBoxesSpec, GerechteSpec, ExtraWindowsSpec>;

// A board family plus the optional Ripeto multiset and inscription.
struct CatalogSpec {
    Family family;
    std::optional<LabelMultiset> multiset;
    std::optional<Inscription> inscription;
};

inline PartialLabeledBoard build(const CatalogSpec& spec)
{
    PartialLabeledBoard plb = std::visit(
        [&](const auto& f) -> PartialLabeledBoard {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LatinSquareSpec>)
                return latin_square(f.order, spec.multiset);
            else if constexpr (std::is_same_v<T, SudokuBoxesSpec>)
                return sudoku_boxes(f.rows, f.cols, spec.multiset);
            else if constexpr (std::is_same_v<T, GerechteSpec>)
                return gerechte(f.order, f.region, spec.multiset);
            else
                return extra_windows(sudoku_boxes(f.rows, f.cols, spec.multiset), f.windows);
        },
        spec.family);
    if (spec.inscription)
        plb = inscripted(plb, *spec.inscription);
    return plb;
}

} // namespace latinp::catalog
