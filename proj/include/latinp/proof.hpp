#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "latinp/label_set.hpp"

namespace latinp {

inline constexpr std::string_view kBacktrackActor = "backtrack";

struct Elimination {
    CellId cell;
    LabelId label;
    bool operator==(const Elimination&) const = default;
};

struct Placement {
    CellId cell;
    LabelId label;
    bool operator==(const Placement&) const = default;
};

// One logical step: a propagator rule firing, or a search decision
// (actor "backtrack") writing a label.
struct ProofStep {
    std::uint64_t serial = 0;
    std::string actor;
    std::vector<Elimination> eliminations;
    std::vector<Placement> placements;

    bool is_decision() const { return actor == kBacktrackActor; }
    bool operator==(const ProofStep&) const = default;
};

struct Proof {
    std::vector<ProofStep> steps;

    bool empty() const { return steps.empty(); }
    std::size_t size() const { return steps.size(); }

    bool has_backtrack() const
    {
        for (const auto& s : steps)
            if (s.is_decision())
                return true;
        return false;
    }

    bool operator==(const Proof&) const = default;
};

// Hands out strictly increasing serials and keeps the proof in sync with a
// search: steps are pushed as labels are written and popped on backtrack.
class ProofRecorder {
public:
    explicit ProofRecorder(std::uint64_t first_serial = 1) : next_(first_serial) {}

    ProofStep& open(std::string_view actor)
    {
        proof_.steps.push_back(ProofStep{next_++, std::string(actor), {}, {}});
        return proof_.steps.back();
    }

    ProofStep& back() { return proof_.steps.back(); }
    std::size_t mark() const { return proof_.steps.size(); }
    void pop_to(std::size_t mark) { proof_.steps.resize(mark); }

    const Proof& proof() const { return proof_; }
    Proof take() { return std::move(proof_); }
    std::uint64_t next_serial() const { return next_; }

private:
    Proof proof_;
    std::uint64_t next_;
};

} // namespace latinp
