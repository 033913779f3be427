#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "latinp/label_set.hpp"

namespace latinp {

// A k-multiset of labels. Labels are interned to dense ids 0..size()-1; the
// display strings are carried along for I/O and never consulted by the engine.
class LabelMultiset {
public:
    LabelMultiset() = default;

    explicit LabelMultiset(std::vector<std::pair<std::string, int>> entries)
    {
        if (entries.empty())
            throw std::invalid_argument("label multiset is empty");
        if (entries.size() > static_cast<std::size_t>(kMaxLabels))
            throw std::invalid_argument("more than 64 distinct labels");
        for (auto& [name, count] : entries) {
            if (name.empty())
                throw std::invalid_argument("label display string is empty");
            if (count < 1)
                throw std::invalid_argument("label '" + name + "' has count < 1");
            if (find(name))
                throw std::invalid_argument("label '" + name + "' listed twice");
            names_.push_back(std::move(name));
            counts_.push_back(count);
            k_ += count;
        }
    }

    // Labels "1".."n" (then letters past 9), each once: the multiset of a
    // plain Latin square of order n.
    static LabelMultiset distinct(int n)
    {
        std::vector<std::pair<std::string, int>> entries;
        for (int i = 0; i < n; ++i)
            entries.emplace_back(default_label_name(i), 1);
        return LabelMultiset(std::move(entries));
    }

    static std::string default_label_name(int i)
    {
        if (i < 9)
            return std::string(1, static_cast<char>('1' + i));
        return std::string(1, static_cast<char>('A' + (i - 9)));
    }

    std::size_t size() const { return counts_.size(); }
    int k() const { return k_; }
    int count(LabelId l) const { return counts_[l]; }
    const std::string& name(LabelId l) const { return names_[l]; }
    LabelSet support() const { return LabelSet::first_n(static_cast<int>(counts_.size())); }

    std::optional<LabelId> find(const std::string& name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return static_cast<LabelId>(i);
        return std::nullopt;
    }

    bool operator==(const LabelMultiset&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<int> counts_;
    int k_ = 0;
};

// Cell set {0..n-1} plus a constellation of asterisms. The constellation is
// kept as given (for validation); the solver works on the distinct asterisms,
// each with its cells sorted and de-duplicated, in sorted order.
class Board {
public:
    Board(std::string name, std::size_t cell_count, std::vector<std::vector<CellId>> constellation)
        : name_(std::move(name)), cell_count_(cell_count), constellation_(std::move(constellation))
    {
        if (cell_count_ == 0)
            throw std::invalid_argument("board has no cells");
        for (const auto& a : constellation_)
            for (CellId c : a)
                if (c >= cell_count_)
                    throw std::out_of_range("asterism cell " + std::to_string(c) + " out of range");
        build_topology();
    }

    const std::string& name() const { return name_; }
    std::size_t cell_count() const { return cell_count_; }
    const std::vector<std::vector<CellId>>& constellation() const { return constellation_; }

    const std::vector<std::vector<CellId>>& asterisms() const { return distinct_; }
    std::size_t asterism_count() const { return distinct_.size(); }
    std::span<const CellId> cells_of(AsterismId a) const { return distinct_[a]; }
    std::span<const AsterismId> asterisms_of(CellId c) const { return cell_asterisms_[c]; }
    // Distinct asterisms sharing at least one cell with a (a excluded).
    std::span<const AsterismId> neighbors(AsterismId a) const { return neighbors_[a]; }
    bool contains(AsterismId a, CellId c) const { return membership_[a * cell_count_ + c] != 0; }

    // Constellation indices that repeat an earlier asterism, paired with the
    // index they repeat.
    const std::vector<std::pair<std::size_t, std::size_t>>& duplicates() const { return duplicates_; }

    // Structural equality: same cells and the same set of distinct asterisms.
    bool operator==(const Board& o) const
    {
        if (name_ != o.name_ || cell_count_ != o.cell_count_)
            return false;
        return distinct_ == o.distinct_;
    }

private:
    void build_topology()
    {
        std::map<std::vector<CellId>, std::size_t> first_seen;
        for (std::size_t i = 0; i < constellation_.size(); ++i) {
            auto cells = constellation_[i];
            std::sort(cells.begin(), cells.end());
            cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
            if (cells.empty())
                continue;
            auto [it, inserted] = first_seen.emplace(cells, i);
            if (!inserted) {
                duplicates_.emplace_back(i, it->second);
                continue;
            }
            distinct_.push_back(std::move(cells));
        }
        // Canonical order, so equal boards share asterism ids (and therefore
        // propagation schedules) however their files were written.
        std::sort(distinct_.begin(), distinct_.end());

        cell_asterisms_.assign(cell_count_, {});
        membership_.assign(distinct_.size() * cell_count_, 0);
        for (AsterismId a = 0; a < distinct_.size(); ++a)
            for (CellId c : distinct_[a]) {
                cell_asterisms_[c].push_back(a);
                membership_[a * cell_count_ + c] = 1;
            }

        neighbors_.assign(distinct_.size(), {});
        for (AsterismId a = 0; a < distinct_.size(); ++a) {
            std::vector<char> seen(distinct_.size(), 0);
            for (CellId c : distinct_[a])
                for (AsterismId b : cell_asterisms_[c])
                    if (b != a && !seen[b]) {
                        seen[b] = 1;
                        neighbors_[a].push_back(b);
                    }
            std::sort(neighbors_[a].begin(), neighbors_[a].end());
        }
    }

    std::string name_;
    std::size_t cell_count_;
    std::vector<std::vector<CellId>> constellation_;
    std::vector<std::vector<CellId>> distinct_;
    std::vector<std::vector<AsterismId>> cell_asterisms_;
    std::vector<std::vector<AsterismId>> neighbors_;
    std::vector<unsigned char> membership_;
    std::vector<std::pair<std::size_t, std::size_t>> duplicates_;
};

using BoardPtr = std::shared_ptr<const Board>;

// Clue pairs fixed in every instance of a puzzle family (e.g. a word spelled
// across a row).
struct Inscription {
    std::map<CellId, LabelId> pairs;

    bool operator==(const Inscription&) const = default;
};

using Assignment = std::vector<std::optional<LabelId>>;

// The universal input: a board, its multiset and a partial labeling.
struct PartialLabeledBoard {
    BoardPtr board;
    LabelMultiset multiset;
    Assignment assignment;
    std::optional<Inscription> inscription;

    PartialLabeledBoard() = default;

    PartialLabeledBoard(BoardPtr b, LabelMultiset m, std::optional<Inscription> insc = std::nullopt)
        : board(std::move(b)), multiset(std::move(m)), assignment(board->cell_count()), inscription(std::move(insc))
    {
        if (inscription)
            for (auto [cell, label] : inscription->pairs) {
                if (cell >= board->cell_count())
                    throw std::out_of_range("inscription cell out of range");
                if (label >= multiset.size())
                    throw std::invalid_argument("inscription label not in multiset");
                assignment[cell] = label;
            }
    }

    std::size_t cell_count() const { return assignment.size(); }
    bool assigned(CellId c) const { return assignment[c].has_value(); }

    std::vector<CellId> empty_cells() const
    {
        std::vector<CellId> out;
        for (CellId c = 0; c < assignment.size(); ++c)
            if (!assignment[c])
                out.push_back(c);
        return out;
    }

    std::vector<CellId> clue_cells() const
    {
        std::vector<CellId> out;
        for (CellId c = 0; c < assignment.size(); ++c)
            if (assignment[c])
                out.push_back(c);
        return out;
    }

    std::size_t clue_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(assignment.begin(), assignment.end(), [](const auto& a) { return a.has_value(); }));
    }

    bool is_total() const { return clue_count() == assignment.size(); }

    bool inscribed(CellId c) const { return inscription && inscription->pairs.contains(c); }

    bool operator==(const PartialLabeledBoard& o) const
    {
        return *board == *o.board && multiset == o.multiset && assignment == o.assignment &&
               inscription == o.inscription;
    }
};

// ---------------------------------------------------------------------------
// Structural checks

struct CellNotCovered {
    CellId cell;
    bool operator==(const CellNotCovered&) const = default;
};
struct AsterismWrongSize {
    std::size_t index;
    std::size_t size;
    bool operator==(const AsterismWrongSize&) const = default;
};
struct DuplicateCellInAsterism {
    std::size_t index;
    bool operator==(const DuplicateCellInAsterism&) const = default;
};

using Violation = std::variant<CellNotCovered, AsterismWrongSize, DuplicateCellInAsterism>;

struct DuplicateAsterismWarning {
    std::size_t index;
    std::size_t repeats;
    bool operator==(const DuplicateAsterismWarning&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<DuplicateAsterismWarning> warnings;

    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_board(const Board& board, std::size_t k)
{
    ValidationReport report;
    std::vector<char> covered(board.cell_count(), 0);
    const auto& cons = board.constellation();
    for (std::size_t i = 0; i < cons.size(); ++i) {
        const auto& a = cons[i];
        if (a.size() != k)
            report.violations.emplace_back(AsterismWrongSize{i, a.size()});
        std::vector<CellId> sorted = a;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            report.violations.emplace_back(DuplicateCellInAsterism{i});
        for (CellId c : a)
            covered[c] = 1;
    }
    for (CellId c = 0; c < board.cell_count(); ++c)
        if (!covered[c])
            report.violations.emplace_back(CellNotCovered{c});
    for (auto [index, repeats] : board.duplicates())
        report.warnings.push_back({index, repeats});
    return report;
}

// Every asterism holds each label at most its multiset count. Linear in the
// total asterism size.
inline bool is_partial_latin_board(const PartialLabeledBoard& plb)
{
    const auto& board = *plb.board;
    if (plb.assignment.size() != board.cell_count())
        return false;
    for (const auto& slot : plb.assignment)
        if (slot && *slot >= plb.multiset.size())
            return false;
    std::vector<int> seen(plb.multiset.size());
    for (const auto& a : board.asterisms()) {
        std::fill(seen.begin(), seen.end(), 0);
        for (CellId c : a)
            if (auto l = plb.assignment[c]; l && ++seen[*l] > plb.multiset.count(*l))
                return false;
    }
    return true;
}

// Total assignment whose every asterism carries the multiset exactly.
inline bool is_latin_board(const PartialLabeledBoard& plb)
{
    if (!plb.is_total() || !is_partial_latin_board(plb))
        return false;
    const auto& board = *plb.board;
    std::vector<int> seen(plb.multiset.size());
    for (const auto& a : board.constellation()) {
        if (a.size() != static_cast<std::size_t>(plb.multiset.k()))
            return false;
        std::fill(seen.begin(), seen.end(), 0);
        for (CellId c : a)
            ++seen[*plb.assignment[c]];
        for (LabelId l = 0; l < plb.multiset.size(); ++l)
            if (seen[l] != plb.multiset.count(l))
                return false;
    }
    return true;
}

} // namespace latinp
