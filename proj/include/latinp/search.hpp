#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "latinp/core_model.hpp"
#include "latinp/domains.hpp"
#include "latinp/proof.hpp"
#include "latinp/propagation.hpp"

namespace latinp {

// How many solutions to look for: a positive count or unbounded.
class SolutionLimit {
public:
    static SolutionLimit unbounded() { return SolutionLimit(std::numeric_limits<std::size_t>::max()); }
    static SolutionLimit of(std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument("solution limit must be positive");
        return SolutionLimit(n);
    }

    bool infinite() const { return n_ == std::numeric_limits<std::size_t>::max(); }
    std::size_t value() const { return n_; }
    bool reached(std::size_t found) const { return !infinite() && found >= n_; }

    bool operator==(const SolutionLimit&) const = default;

private:
    explicit SolutionLimit(std::size_t n) : n_(n) {}
    std::size_t n_;
};

enum class Branching {
    MinDomain,  // fewest candidates, ties to the lowest cell id
    FirstEmpty, // lowest cell id with more than one candidate
};

enum class Instantiation {
    Ascending, // interned label id order
    Seeded,    // per-node shuffle driven by SearchConfig::seed
};

struct SearchConfig {
    SolutionLimit limit = SolutionLimit::unbounded();
    bool interleave_propagation = true;
    bool nogood_recording = false;
    std::size_t nogood_capacity = 4096;
    Branching branching = Branching::MinDomain;
    Instantiation instantiation = Instantiation::Ascending;
    std::uint64_t seed = 0;
    PropagatorSet propagators = shipped_propagators();

    bool record_proofs = false;
    bool tag_writes = false;
    // Compare the domain against a copy after every undo; throws
    // std::logic_error on mismatch.
    bool verify_restoration = false;

    std::optional<std::uint64_t> node_limit;
    std::optional<std::chrono::milliseconds> time_limit;
    unsigned jobs = 1;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    std::uint64_t backjumps = 0;
    std::uint64_t propagations = 0;
    std::uint64_t nogoods_recorded = 0;
    std::uint64_t restoration_checks = 0;
    std::chrono::nanoseconds wall_time{0};

    SearchStats& operator+=(const SearchStats& o)
    {
        nodes += o.nodes;
        backtracks += o.backtracks;
        backjumps += o.backjumps;
        propagations += o.propagations;
        nogoods_recorded += o.nogoods_recorded;
        restoration_checks += o.restoration_checks;
        return *this;
    }
};

enum class SearchStatus { Complete, Incomplete };

// A label written during search, by a decision or by propagation, with the
// serial tag it received.
struct TaggedWrite {
    std::uint64_t tag;
    CellId cell;
    LabelId label;
    bool operator==(const TaggedWrite&) const = default;
};

using TagSequence = std::vector<TaggedWrite>;

struct SearchResult {
    SearchStatus status = SearchStatus::Complete;
    std::vector<PartialLabeledBoard> solutions;
    std::vector<Proof> proofs;               // one per solution when record_proofs
    std::vector<TagSequence> tag_sequences;  // one per solution when tag_writes
    SearchStats stats;
};

// ---------------------------------------------------------------------------

struct BranchChoice {
    CellId cell;
    std::vector<LabelId> labels;
};

inline BranchChoice choose_branch(const BoardDomain& d, const SearchConfig& cfg, std::mt19937_64* rng = nullptr)
{
    std::optional<CellId> best;
    for (CellId c : d.keys()) {
        const int size = d.at(c).size();
        if (size <= 1)
            continue;
        if (!best) {
            best = c;
            if (cfg.branching == Branching::FirstEmpty)
                break;
        } else if (cfg.branching == Branching::MinDomain && size < d.at(*best).size()) {
            best = c;
        }
    }
    if (!best)
        throw std::invalid_argument("choose_branch: no cell with more than one candidate");
    BranchChoice choice{*best, {}};
    for (LabelId l : d.at(*best))
        choice.labels.push_back(l);
    if (cfg.instantiation == Instantiation::Seeded && rng)
        std::shuffle(choice.labels.begin(), choice.labels.end(), *rng);
    return choice;
}

using Nogood = std::vector<Placement>;

// Bounded FIFO store of assignment fragments known to admit no solution.
class NogoodStore {
public:
    explicit NogoodStore(std::size_t capacity = 4096) : capacity_(capacity) {}

    void record(Nogood fragment)
    {
        if (capacity_ == 0)
            return;
        std::sort(fragment.begin(), fragment.end(),
                  [](Placement a, Placement b) { return a.cell < b.cell; });
        if (store_.size() == capacity_)
            store_.pop_front();
        store_.push_back(std::move(fragment));
    }

    // True iff the partial assignment extends (contains) a recorded nogood.
    bool consult(std::span<const Placement> fragment) const
    {
        return matches([&](Placement p) {
            return std::find(fragment.begin(), fragment.end(), p) != fragment.end();
        });
    }

    // Same, where the assignment is given by the singleton cells of a domain.
    bool consult(const std::vector<LabelSet>& sets, std::optional<Placement> extra = std::nullopt) const
    {
        return matches([&](Placement p) {
            return sets[p.cell] == LabelSet::single(p.label) || (extra && *extra == p);
        });
    }

    std::size_t size() const { return store_.size(); }

private:
    template <class Holds>
    bool matches(Holds&& holds) const
    {
        for (const auto& ng : store_)
            if (std::all_of(ng.begin(), ng.end(), holds))
                return true;
        return false;
    }

    std::size_t capacity_;
    std::deque<Nogood> store_;
};

namespace detail {

// Depth-first enumeration over one board. Owns its domain, trail, proof
// stack and nogood store.
class Searcher {
public:
    Searcher(const PartialLabeledBoard& plb, const SearchConfig& cfg, SearchResult& out)
        : plb_(plb), cfg_(cfg), out_(out), engine_(*plb.board, plb.multiset, cfg.propagators),
          nogoods_(cfg.nogood_capacity), rng_(cfg.seed)
    {
        if (cfg_.time_limit)
            deadline_ = std::chrono::steady_clock::now() + *cfg_.time_limit;
    }

    // Initial domain plus root propagation. Returns false on contradiction.
    bool prepare_root()
    {
        const BoardDomain d = initial_domain(plb_);
        keys_ = d.keys();
        ws_ = Workspace(d.sets());
        ws_.set_trailing(true);
        if (cfg_.record_proofs || cfg_.tag_writes)
            ws_.set_recorder(&recorder_);
        bool ok = true;
        if (cfg_.interleave_propagation)
            ok = engine_.run(ws_, true, nullptr, &out_.stats.propagations) && counts_ok();
        else
            ok = counts_ok();
        if (ok) {
            tag_new_writes(0);
            root_sets_ = ws_.sets();
        }
        return ok;
    }

    void search() { dfs(); }

    // Continue from a copy of another searcher's root, below one decision.
    void search_below(const Searcher& root, CellId cell, LabelId label, std::uint64_t tag_base)
    {
        keys_ = root.keys_;
        root_sets_ = root.root_sets_;
        ws_ = Workspace(root.root_sets_);
        ws_.set_trailing(true);
        recorder_ = root.recorder_;
        writes_ = root.writes_;
        next_tag_ = tag_base + root.next_tag_;
        if (cfg_.record_proofs || cfg_.tag_writes)
            ws_.set_recorder(&recorder_);
        try_label(cell, label);
    }

    BranchChoice root_choice() { return choose_branch(BoardDomain(ws_.sets(), keys_), cfg_, &rng_); }
    bool root_solved() const
    {
        for (CellId c : keys_)
            if (!ws_.at(c).is_singleton())
                return false;
        return true;
    }

    bool stopped() const { return stop_; }
    bool budget_hit() const { return budget_hit_; }
    void record_solution() { emit_solution(); }

private:
    bool out_of_budget()
    {
        if (cfg_.node_limit && out_.stats.nodes > *cfg_.node_limit)
            return true;
        if (deadline_ && (out_.stats.nodes & 0xff) == 0 && std::chrono::steady_clock::now() > *deadline_)
            return true;
        return false;
    }

    // Every label's fixed copies stay within its count in every asterism.
    bool counts_ok(const std::vector<LabelSet>& sets) const
    {
        std::vector<int> seen(plb_.multiset.size());
        for (const auto& a : plb_.board->asterisms()) {
            std::fill(seen.begin(), seen.end(), 0);
            for (CellId c : a) {
                const LabelSet s = sets[c];
                if (s.empty())
                    return false;
                if (s.is_singleton() && ++seen[s.first()] > plb_.multiset.count(s.first()))
                    return false;
            }
        }
        return true;
    }
    bool counts_ok() const { return counts_ok(ws_.sets()); }

    std::size_t dfs()
    {
        ++out_.stats.nodes;
        if (out_of_budget()) {
            stop_ = budget_hit_ = true;
            return 0;
        }
        std::optional<CellId> open;
        for (CellId c : keys_)
            if (ws_.at(c).size() > 1) {
                open = c;
                break;
            }
        if (!open) {
            if (!complete_is_latin())
                return 0;
            emit_solution();
            return 1;
        }
        const BranchChoice choice = choose_branch(BoardDomain(ws_.sets(), keys_), cfg_, &rng_);
        std::size_t found = 0;
        for (LabelId l : choice.labels) {
            found += try_label(choice.cell, l);
            if (stop_)
                break;
        }
        return found;
    }

    std::size_t try_label(CellId cell, LabelId label)
    {
        if (cfg_.nogood_recording && nogoods_.consult(ws_.sets(), Placement{cell, label})) {
            ++out_.stats.backjumps;
            return 0;
        }
        const std::size_t trail_mark = ws_.mark();
        const std::size_t proof_mark = recorder_.mark();
        const std::size_t write_mark = writes_.size();
        std::vector<LabelSet> snapshot;
        if (cfg_.verify_restoration)
            snapshot = ws_.sets();

        ws_.decide(cell, label);
        decisions_.push_back({cell, label});
        bool ok = !ws_.wiped();
        if (ok && cfg_.interleave_propagation)
            ok = engine_.run(ws_, false, nullptr, &out_.stats.propagations);
        ok = ok && counts_ok();

        std::size_t found = 0;
        if (ok) {
            tag_new_writes(proof_mark);
            found = dfs();
        } else if (cfg_.nogood_recording) {
            learn_from_failure();
        }

        decisions_.pop_back();
        ws_.undo(trail_mark);
        recorder_.pop_to(proof_mark);
        writes_.resize(write_mark);
        ++out_.stats.backtracks;
        if (cfg_.verify_restoration) {
            ++out_.stats.restoration_checks;
            if (ws_.sets() != snapshot)
                throw std::logic_error("state restoration mismatch");
        }
        return found;
    }

    // Does root + fragment fail on its own (propagation wipeout or an
    // over-full asterism)?
    bool fails(std::span<const Placement> fragment)
    {
        Workspace probe(root_sets_);
        for (Placement p : fragment) {
            if (!probe.at(p.cell).contains(p.label))
                return true;
            probe.decide(p.cell, p.label);
        }
        if (cfg_.interleave_propagation && !engine_.run(probe, false, nullptr, &out_.stats.propagations))
            return true;
        return !counts_ok(probe.sets());
    }

    // Shrinks the failing decision path by deletion and stores the result.
    void learn_from_failure()
    {
        Nogood ng = decisions_;
        for (std::size_t i = 0; i + 1 < ng.size();) {
            Nogood without = ng;
            without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
            if (fails(without))
                ng = std::move(without);
            else
                ++i;
        }
        nogoods_.record(std::move(ng));
        ++out_.stats.nogoods_recorded;
    }

    bool complete_is_latin() const
    {
        PartialLabeledBoard filled = plb_;
        for (CellId c : keys_)
            filled.assignment[c] = ws_.at(c).first();
        return is_latin_board(filled);
    }

    void emit_solution()
    {
        PartialLabeledBoard solution = plb_;
        for (CellId c : keys_)
            solution.assignment[c] = ws_.at(c).first();
        out_.solutions.push_back(std::move(solution));
        if (cfg_.record_proofs)
            out_.proofs.push_back(recorder_.proof());
        if (cfg_.tag_writes)
            out_.tag_sequences.push_back(writes_);
        if (cfg_.limit.reached(out_.solutions.size()))
            stop_ = true;
    }

    void tag_new_writes(std::size_t proof_mark)
    {
        if (!cfg_.tag_writes)
            return;
        const auto& steps = recorder_.proof().steps;
        for (std::size_t i = proof_mark; i < steps.size(); ++i)
            for (Placement p : steps[i].placements)
                writes_.push_back({next_tag_++, p.cell, p.label});
    }

    const PartialLabeledBoard& plb_;
    const SearchConfig& cfg_;
    SearchResult& out_;
    FixpointEngine engine_;
    Workspace ws_;
    ProofRecorder recorder_;
    NogoodStore nogoods_;
    std::mt19937_64 rng_;
    std::vector<CellId> keys_;
    std::vector<LabelSet> root_sets_;
    std::vector<Placement> decisions_;
    TagSequence writes_;
    std::uint64_t next_tag_ = 1;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    bool stop_ = false;
    bool budget_hit_ = false;
};

inline void run_parallel(const PartialLabeledBoard& plb, const SearchConfig& cfg, Searcher& root, SearchResult& out)
{
    const BranchChoice choice = root.root_choice();
    std::vector<SearchResult> parts(choice.labels.size());
    std::vector<char> hit(choice.labels.size(), 0);

    for (std::size_t first = 0; first < choice.labels.size(); first += cfg.jobs) {
        const std::size_t last = std::min(choice.labels.size(), first + cfg.jobs);
        std::vector<std::future<void>> running;
        for (std::size_t i = first; i < last; ++i)
            running.push_back(std::async(std::launch::async, [&, i] {
                SearchConfig sub = cfg;
                sub.seed = cfg.seed + i;
                Searcher worker(plb, sub, parts[i]);
                worker.search_below(root, choice.cell, choice.labels[i], std::uint64_t{i + 1} << 40);
                hit[i] = worker.budget_hit() ? 1 : 0;
            }));
        for (auto& f : running)
            f.get();
    }

    for (std::size_t i = 0; i < parts.size(); ++i) {
        out.stats += parts[i].stats;
        for (std::size_t s = 0; s < parts[i].solutions.size() && !cfg.limit.reached(out.solutions.size()); ++s) {
            out.solutions.push_back(std::move(parts[i].solutions[s]));
            if (cfg.record_proofs)
                out.proofs.push_back(std::move(parts[i].proofs[s]));
            if (cfg.tag_writes)
                out.tag_sequences.push_back(std::move(parts[i].tag_sequences[s]));
        }
        if (cfg.limit.reached(out.solutions.size()))
            break;
        if (hit[i]) {
            out.status = SearchStatus::Incomplete;
            break;
        }
    }
}

} // namespace detail

// Latin boards completing plb: none when plb is not a partial Latin board,
// plb itself when it already is a Latin board, otherwise up to cfg.limit
// solutions in deterministic depth-first order.
inline SearchResult enumerate_solutions(const PartialLabeledBoard& plb, const SearchConfig& cfg = {})
{
    const auto started = std::chrono::steady_clock::now();
    SearchResult out;
    if (!is_partial_latin_board(plb))
        return out;
    if (plb.is_total()) {
        if (is_latin_board(plb)) {
            out.solutions.push_back(plb);
            if (cfg.record_proofs)
                out.proofs.emplace_back();
            if (cfg.tag_writes)
                out.tag_sequences.emplace_back();
        }
        return out;
    }

    detail::Searcher root(plb, cfg, out);
    if (root.prepare_root()) {
        if (cfg.jobs > 1 && !root.root_solved())
            detail::run_parallel(plb, cfg, root, out);
        else
            root.search();
    }
    if (root.budget_hit())
        out.status = SearchStatus::Incomplete;
    out.stats.wall_time = std::chrono::steady_clock::now() - started;
    return out;
}

} // namespace latinp
