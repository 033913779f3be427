#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "latinp/core_model.hpp"
#include "latinp/domains.hpp"
#include "latinp/errors.hpp"
#include "latinp/proof.hpp"
#include "latinp/propagation.hpp"

namespace latinp {

// ---------------------------------------------------------------------------
// Fairness certification

struct FairnessVerdict {
    bool fair = false; // false means NotCertified, not "unfair"
    Proof proof;       // the full polynomial attrition sequence when fair
    std::optional<PartialLabeledBoard> solution;
};

namespace detail {

inline std::optional<PartialLabeledBoard> read_solution(const PartialLabeledBoard& puzzle,
                                                        const std::vector<LabelSet>& sets)
{
    PartialLabeledBoard out = puzzle;
    for (CellId c = 0; c < sets.size(); ++c) {
        if (!sets[c].is_singleton())
            return std::nullopt;
        out.assignment[c] = sets[c].first();
    }
    if (!is_latin_board(out))
        return std::nullopt;
    return out;
}

} // namespace detail

// A puzzle solved by a fixpoint of monotonic propagators admits a monotonic
// full attrition sequence, hence is fair. The converse is not claimed.
inline FairnessVerdict certify_fair(const PartialLabeledBoard& puzzle, const PropagatorSet& props)
{
    for (const Propagator* p : props)
        if (!p->monotonic())
            throw std::invalid_argument("certify_fair: propagator '" + std::string(p->name()) +
                                        "' is not monotonic");
    FairnessVerdict verdict;
    if (!is_partial_latin_board(puzzle))
        return verdict;
    FixpointResult fp = propagate_fixpoint(puzzle, initial_domain(puzzle), props);
    if (fp.outcome.wipeout)
        return verdict;
    verdict.solution = detail::read_solution(puzzle, fp.outcome.domain.sets());
    if (verdict.solution) {
        verdict.fair = true;
        verdict.proof = std::move(fp.proof);
    }
    return verdict;
}

struct RobustnessFailure {
    std::size_t trial;
    std::string schedule; // "<propagator>@<asterism>" prefix, then "| fixpoint"
};

struct RobustnessReport {
    std::size_t trials = 0;
    std::size_t solved = 0;
    std::vector<RobustnessFailure> failures;

    bool passed() const { return failures.empty(); }
};

// Applies random partial attrition sequences first, then resumes to a
// fixpoint under a random schedule, and checks every run still reaches the
// solution found by the default schedule.
inline RobustnessReport fairness_robustness_check(const PartialLabeledBoard& puzzle, const PropagatorSet& props,
                                                  std::size_t trials, std::uint64_t seed)
{
    RobustnessReport report;
    if (trials == 0 || props.empty())
        return report;
    const BoardDomain start = initial_domain(puzzle);
    const PropagationContext ctx{*puzzle.board, puzzle.multiset};
    FixpointEngine engine(*puzzle.board, puzzle.multiset, props);

    Workspace reference(start.sets());
    engine.run(reference, true);
    const auto expected = detail::read_solution(puzzle, reference.sets());

    std::mt19937_64 rng(seed);
    const std::size_t asterisms = puzzle.board->asterism_count();
    for (std::size_t t = 0; t < trials; ++t) {
        ++report.trials;
        Workspace ws(start.sets());
        std::string schedule;
        const std::size_t prefix = rng() % (2 * asterisms + 1);
        for (std::size_t i = 0; i < prefix && !ws.wiped(); ++i) {
            const Propagator* p = props[rng() % props.size()];
            const auto a = static_cast<AsterismId>(rng() % asterisms);
            p->apply_at(ctx, ws, a);
            schedule += std::string(p->name()) + "@" + std::to_string(a) + " ";
        }
        schedule += "| fixpoint";
        engine.run(ws, true, &rng);
        const auto got = ws.wiped() ? std::nullopt : detail::read_solution(puzzle, ws.sets());
        if (expected && got && got->assignment == expected->assignment)
            ++report.solved;
        else
            report.failures.push_back({t, std::move(schedule)});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Replay and rating

// Re-applies the proof to the puzzle's initial domain and returns the Latin
// board it reaches.
inline PartialLabeledBoard replay(const Proof& proof, const PartialLabeledBoard& puzzle)
{
    if (!is_partial_latin_board(puzzle))
        throw ReplayMismatch("puzzle is not a partial Latin board");
    BoardDomain d = initial_domain(puzzle);
    std::uint64_t last = 0;
    for (const auto& step : proof.steps) {
        if (step.serial <= last)
            throw ReplayMismatch("proof serials are not strictly increasing at " + std::to_string(step.serial));
        last = step.serial;
        for (auto e : step.eliminations) {
            if (e.cell >= d.sets().size())
                throw ReplayMismatch("proof names a cell outside the board");
            LabelSet s = d.at(e.cell);
            s.erase(e.label);
            d.set(e.cell, s);
        }
        for (auto p : step.placements) {
            if (p.cell >= d.sets().size() || !d.at(p.cell).contains(p.label))
                throw ReplayMismatch("placement " + std::to_string(p.cell) + " is not a candidate");
            d.set(p.cell, LabelSet::single(p.label));
        }
    }
    auto solution = detail::read_solution(puzzle, d.sets());
    if (!solution)
        throw ReplayMismatch("proof does not reach a Latin board");
    return *solution;
}

enum class Band { VeryEasy, Easy, Medium, Difficult, VeryDifficult, Unfair };

inline std::string_view to_string(Band b)
{
    switch (b) {
    case Band::VeryEasy: return "very easy";
    case Band::Easy: return "easy";
    case Band::Medium: return "medium";
    case Band::Difficult: return "difficult";
    case Band::VeryDifficult: return "very difficult";
    case Band::Unfair: return "unfair";
    }
    return "?";
}

// Weights per propagator and the upper score bounds of the first four bands.
struct RatingConfig {
    std::map<std::string, int, std::less<>> weights{
        {"count_saturation", 1},
        {"required_count", 2},
        {"intersection", 4},
    };
    std::array<double, 4> band_limits{1.05, 1.35, 1.80, 2.50}; // very easy, easy, medium, difficult
};

struct DifficultyRating {
    std::int64_t weight_sum = 0;
    std::size_t empty_cells = 0;
    double score = 0.0; // weight_sum / max(1, empty_cells)
    Band band = Band::VeryEasy;
    std::map<std::string, std::size_t> histogram;

    bool operator==(const DifficultyRating&) const = default;
};

inline Band band_for(double score, const RatingConfig& cfg)
{
    for (std::size_t i = 0; i < cfg.band_limits.size(); ++i)
        if (score < cfg.band_limits[i])
            return static_cast<Band>(i);
    return Band::VeryDifficult;
}

inline DifficultyRating rate(const Proof& proof, const PartialLabeledBoard& puzzle, const RatingConfig& cfg = {})
{
    replay(proof, puzzle);
    DifficultyRating r;
    r.empty_cells = puzzle.cell_count() - puzzle.clue_count();
    bool backtracked = false;
    for (const auto& step : proof.steps) {
        ++r.histogram[step.actor];
        if (step.is_decision()) {
            backtracked = true;
            continue;
        }
        auto w = cfg.weights.find(step.actor);
        if (w == cfg.weights.end())
            throw std::invalid_argument("no rating weight for actor '" + step.actor + "'");
        r.weight_sum += w->second;
    }
    r.score = static_cast<double>(r.weight_sum) / static_cast<double>(std::max<std::size_t>(1, r.empty_cells));
    r.band = backtracked ? Band::Unfair : band_for(r.score, cfg);
    return r;
}

} // namespace latinp
