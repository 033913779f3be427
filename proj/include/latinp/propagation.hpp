#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latinp/core_model.hpp"
#include "latinp/domains.hpp"
#include "latinp/proof.hpp"

namespace latinp {

// Mutable candidate sets for one attrition run. Optionally trails every
// change so a search can restore an earlier state bit-exactly, and
// optionally records each change into a proof step.
class Workspace {
public:
    Workspace() = default;
    explicit Workspace(std::vector<LabelSet> sets) : sets_(std::move(sets)) {}

    std::size_t size() const { return sets_.size(); }
    LabelSet at(CellId c) const { return sets_[c]; }
    const std::vector<LabelSet>& sets() const { return sets_; }
    bool wiped() const { return wiped_; }

    void set_trailing(bool on) { trailing_ = on; }
    void set_recorder(ProofRecorder* r) { recorder_ = r; }
    ProofRecorder* recorder() const { return recorder_; }

    // Groups the following changes into one proof step attributed to actor.
    void begin_step(std::string_view actor)
    {
        actor_ = actor;
        step_open_ = false;
    }
    void end_step() { actor_ = {}; }

    // Removes labels from cell c; returns true when c's candidates changed.
    bool remove(CellId c, LabelSet labels)
    {
        const LabelSet before = sets_[c];
        const LabelSet gone = before & labels;
        if (gone.empty())
            return false;
        if (trailing_)
            trail_.push_back({c, before});
        const LabelSet after = before - gone;
        sets_[c] = after;
        changed_.push_back(c);
        if (after.empty())
            wiped_ = true;
        if (recorder_ && !actor_.empty()) {
            if (!step_open_) {
                recorder_->open(actor_);
                step_open_ = true;
            }
            auto& step = recorder_->back();
            for (LabelId l : gone)
                step.eliminations.push_back({c, l});
            if (after.is_singleton())
                step.placements.push_back({c, after.first()});
        }
        return true;
    }

    bool restrict_to(CellId c, LabelSet keep) { return remove(c, sets_[c] - keep); }

    // A search decision: writes label l into cell c as a single "backtrack"
    // step carrying only the placement.
    void decide(CellId c, LabelId l)
    {
        const LabelSet before = sets_[c];
        if (before == LabelSet::single(l))
            return;
        if (trailing_)
            trail_.push_back({c, before});
        sets_[c] = LabelSet::single(l);
        changed_.push_back(c);
        if (!before.contains(l))
            wiped_ = true;
        if (recorder_)
            recorder_->open(kBacktrackActor).placements.push_back({c, l});
    }

    // Empties every cell: the bottom element every sound attrition maps a
    // contradictory domain to.
    void wipe_all()
    {
        for (CellId c = 0; c < sets_.size(); ++c)
            if (!sets_[c].empty()) {
                if (trailing_)
                    trail_.push_back({c, sets_[c]});
                sets_[c] = LabelSet{};
            }
        wiped_ = true;
    }

    std::size_t mark() const { return trail_.size(); }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            sets_[trail_.back().cell] = trail_.back().before;
            trail_.pop_back();
        }
        wiped_ = false;
        changed_.clear();
    }

    std::vector<CellId> take_changed()
    {
        std::vector<CellId> out;
        out.swap(changed_);
        return out;
    }

private:
    struct TrailEntry {
        CellId cell;
        LabelSet before;
    };

    std::vector<LabelSet> sets_;
    std::vector<TrailEntry> trail_;
    std::vector<CellId> changed_;
    ProofRecorder* recorder_ = nullptr;
    std::string_view actor_;
    bool step_open_ = false;
    bool trailing_ = false;
    bool wiped_ = false;
};

struct PropagationContext {
    const Board& board;
    const LabelMultiset& multiset;
};

// An attrition algorithm. apply_at re-establishes every rule instance that
// reads the cells of asterism a; the fixpoint engine relies on that to wake
// only the asterisms whose cells changed.
class Propagator {
public:
    virtual ~Propagator() = default;
    virtual std::string_view name() const = 0;
    virtual int weight() const = 0;
    virtual bool monotonic() const = 0;
    virtual void apply_at(const PropagationContext& ctx, Workspace& ws, AsterismId a) const = 0;
};

namespace detail {

inline int fixed_count(const Workspace& ws, std::span<const CellId> cells, LabelId l)
{
    int n = 0;
    for (CellId c : cells)
        n += ws.at(c) == LabelSet::single(l);
    return n;
}

} // namespace detail

// A label that already fills its multiset count in an asterism can go
// nowhere else in that asterism.
class CountSaturation final : public Propagator {
public:
    std::string_view name() const override { return "count_saturation"; }
    int weight() const override { return 1; }
    bool monotonic() const override { return true; }

    void apply_at(const PropagationContext& ctx, Workspace& ws, AsterismId a) const override
    {
        const auto cells = ctx.board.cells_of(a);
        for (LabelId l = 0; l < ctx.multiset.size() && !ws.wiped(); ++l) {
            const int fixed = detail::fixed_count(ws, cells, l);
            const int limit = ctx.multiset.count(l);
            if (fixed < limit)
                continue;
            ws.begin_step(name());
            for (CellId c : cells) {
                const LabelSet s = ws.at(c);
                if (!s.contains(l))
                    continue;
                const int others = fixed - (s == LabelSet::single(l) ? 1 : 0);
                if (others >= limit)
                    ws.remove(c, LabelSet::single(l));
            }
            ws.end_step();
        }
    }
};

// If exactly as many cells of an asterism can still host a label as the
// multiset requires, all of them must take it. Fewer hosts is a contradiction.
class RequiredCount final : public Propagator {
public:
    std::string_view name() const override { return "required_count"; }
    int weight() const override { return 2; }
    bool monotonic() const override { return true; }

    void apply_at(const PropagationContext& ctx, Workspace& ws, AsterismId a) const override
    {
        const auto cells = ctx.board.cells_of(a);
        std::vector<CellId> hosts;
        for (LabelId l = 0; l < ctx.multiset.size() && !ws.wiped(); ++l) {
            hosts.clear();
            for (CellId c : cells)
                if (ws.at(c).contains(l))
                    hosts.push_back(c);
            const auto need = static_cast<std::size_t>(ctx.multiset.count(l));
            if (hosts.size() > need)
                continue;
            ws.begin_step(name());
            if (hosts.size() < need) {
                for (CellId c : cells)
                    ws.remove(c, ws.at(c));
            } else {
                for (CellId c : hosts)
                    ws.restrict_to(c, LabelSet::single(l));
            }
            ws.end_step();
        }
    }
};

// Asterisms a and b overlap. When every open host of label l in a lies in
// a∩b, the copies a still needs are placed inside b; a cell of b outside a
// loses l once those copies plus b's fixed copies already fill l's count.
class Intersection final : public Propagator {
public:
    std::string_view name() const override { return "intersection"; }
    int weight() const override { return 4; }
    bool monotonic() const override { return true; }

    void apply_at(const PropagationContext& ctx, Workspace& ws, AsterismId x) const override
    {
        for (AsterismId b : ctx.board.neighbors(x)) {
            pair_rule(ctx, ws, x, b);
            pair_rule(ctx, ws, b, x);
            if (ws.wiped())
                return;
        }
    }

private:
    void pair_rule(const PropagationContext& ctx, Workspace& ws, AsterismId a, AsterismId b) const
    {
        const auto cells_a = ctx.board.cells_of(a);
        const auto cells_b = ctx.board.cells_of(b);
        for (LabelId l = 0; l < ctx.multiset.size() && !ws.wiped(); ++l) {
            const LabelSet only = LabelSet::single(l);
            int fixed_a = 0;
            bool confined = true;
            for (CellId c : cells_a) {
                const LabelSet s = ws.at(c);
                if (s == only)
                    ++fixed_a;
                else if (s.contains(l) && !ctx.board.contains(b, c)) {
                    confined = false;
                    break;
                }
            }
            if (!confined)
                continue;
            const int limit = ctx.multiset.count(l);
            const int still_needed_in_a = limit - fixed_a;
            const int fixed_b = detail::fixed_count(ws, cells_b, l);
            if (fixed_b + still_needed_in_a < limit)
                continue;
            ws.begin_step(name());
            for (CellId c : cells_b) {
                if (ctx.board.contains(a, c))
                    continue;
                const LabelSet s = ws.at(c);
                if (!s.contains(l))
                    continue;
                const int others = fixed_b - (s == only ? 1 : 0);
                if (others + still_needed_in_a >= limit)
                    ws.remove(c, only);
            }
            ws.end_step();
        }
    }
};

inline const CountSaturation& count_saturation()
{
    static const CountSaturation p;
    return p;
}

inline const RequiredCount& required_count()
{
    static const RequiredCount p;
    return p;
}

inline const Intersection& intersection()
{
    static const Intersection p;
    return p;
}

using PropagatorSet = std::vector<const Propagator*>;

// count_saturation (1), required_count (2), intersection (4).
inline PropagatorSet shipped_propagators()
{
    return {&count_saturation(), &required_count(), &intersection()};
}

// ---------------------------------------------------------------------------
// Fixpoint engine

// Work queue of dirty asterisms per propagator. The cheapest propagator with
// pending work runs first; with a schedule RNG both the propagator and the
// asterism are picked at random instead.
class FixpointEngine {
public:
    FixpointEngine(const Board& board, const LabelMultiset& multiset, PropagatorSet props)
        : ctx_{board, multiset}, props_(std::move(props))
    {
        std::stable_sort(props_.begin(), props_.end(),
                         [](const Propagator* x, const Propagator* y) { return x->weight() < y->weight(); });
        queues_.resize(props_.size());
        queued_.assign(props_.size(), std::vector<char>(board.asterism_count(), 0));
    }

    const PropagatorSet& propagators() const { return props_; }

    // Runs until no propagator can change the workspace. With wake_all every
    // asterism starts dirty; otherwise only those touching cells changed
    // since the last run. Returns false on wipeout.
    bool run(Workspace& ws, bool wake_all, std::mt19937_64* schedule = nullptr, std::uint64_t* applications = nullptr)
    {
        if (ws.wiped())
            return false;
        if (wake_all) {
            ws.take_changed();
            for (AsterismId a = 0; a < ctx_.board.asterism_count(); ++a)
                enqueue(a);
        } else {
            wake(ws);
        }
        while (true) {
            std::size_t p = props_.size();
            if (schedule) {
                std::vector<std::size_t> ready;
                for (std::size_t i = 0; i < props_.size(); ++i)
                    if (!queues_[i].empty())
                        ready.push_back(i);
                if (!ready.empty())
                    p = ready[(*schedule)() % ready.size()];
            } else {
                for (std::size_t i = 0; i < props_.size(); ++i)
                    if (!queues_[i].empty()) {
                        p = i;
                        break;
                    }
            }
            if (p == props_.size())
                return true;

            auto& q = queues_[p];
            AsterismId a;
            if (schedule) {
                const std::size_t at = (*schedule)() % q.size();
                a = q[at];
                q.erase(q.begin() + static_cast<std::ptrdiff_t>(at));
            } else {
                a = q.front();
                q.pop_front();
            }
            queued_[p][a] = 0;

            props_[p]->apply_at(ctx_, ws, a);
            if (applications)
                ++*applications;
            if (ws.wiped()) {
                clear();
                return false;
            }
            wake(ws);
        }
    }

private:
    void enqueue(AsterismId a)
    {
        for (std::size_t p = 0; p < props_.size(); ++p)
            if (!queued_[p][a]) {
                queued_[p][a] = 1;
                queues_[p].push_back(a);
            }
    }

    void wake(Workspace& ws)
    {
        for (CellId c : ws.take_changed())
            for (AsterismId a : ctx_.board.asterisms_of(c))
                enqueue(a);
    }

    void clear()
    {
        for (std::size_t p = 0; p < props_.size(); ++p) {
            for (AsterismId a : queues_[p])
                queued_[p][a] = 0;
            queues_[p].clear();
        }
    }

    PropagationContext ctx_;
    PropagatorSet props_;
    std::vector<std::deque<AsterismId>> queues_;
    std::vector<std::vector<char>> queued_;
};

// ---------------------------------------------------------------------------
// Functional entry points over BoardDomain

struct AttributedElimination {
    CellId cell;
    LabelId label;
    std::string propagator;
    bool operator==(const AttributedElimination&) const = default;
};

struct PropagationOutcome {
    BoardDomain domain;
    std::vector<AttributedElimination> eliminations;
    std::vector<Placement> placements;
    bool wipeout = false;
};

namespace detail {

inline PropagationOutcome make_outcome(const BoardDomain& input, Workspace& ws, const Proof& steps)
{
    PropagationOutcome out;
    out.wipeout = ws.wiped();
    if (out.wipeout)
        ws.wipe_all();
    out.domain = BoardDomain(ws.sets(), input.keys());
    for (const auto& s : steps.steps) {
        for (auto e : s.eliminations)
            out.eliminations.push_back({e.cell, e.label, s.actor});
        for (auto p : s.placements)
            if (!out.wipeout && input.at(p.cell).size() > 1)
                out.placements.push_back(p);
    }
    return out;
}

inline Workspace start(const BoardDomain& d)
{
    Workspace ws(d.sets());
    if (d.wiped_out())
        ws.wipe_all();
    return ws;
}

} // namespace detail

// One sweep of p over all asterisms in index order.
inline PropagationOutcome apply(const Propagator& p, const PartialLabeledBoard& plb, const BoardDomain& d)
{
    ProofRecorder recorder;
    Workspace ws = detail::start(d);
    ws.set_recorder(&recorder);
    const PropagationContext ctx{*plb.board, plb.multiset};
    for (AsterismId a = 0; a < plb.board->asterism_count() && !ws.wiped(); ++a)
        p.apply_at(ctx, ws, a);
    return detail::make_outcome(d, ws, recorder.proof());
}

inline PropagationOutcome prop_count_saturation(const PartialLabeledBoard& plb, const BoardDomain& d)
{
    return apply(count_saturation(), plb, d);
}

inline PropagationOutcome prop_required_count(const PartialLabeledBoard& plb, const BoardDomain& d)
{
    return apply(required_count(), plb, d);
}

inline PropagationOutcome prop_intersection(const PartialLabeledBoard& plb, const BoardDomain& d)
{
    return apply(intersection(), plb, d);
}

struct FixpointResult {
    PropagationOutcome outcome;
    Proof proof;
};

inline FixpointResult propagate_fixpoint(const PartialLabeledBoard& plb, const BoardDomain& d,
                                         const PropagatorSet& props, std::mt19937_64* schedule = nullptr,
                                         std::uint64_t first_serial = 1)
{
    ProofRecorder recorder(first_serial);
    Workspace ws = detail::start(d);
    ws.set_recorder(&recorder);
    FixpointEngine engine(*plb.board, plb.multiset, props);
    engine.run(ws, true, schedule);
    FixpointResult result;
    result.outcome = detail::make_outcome(d, ws, recorder.proof());
    result.proof = recorder.take();
    return result;
}

} // namespace latinp
