#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sitrep/fsf.hpp"

namespace sitrep {

/// Behavioural vector of a factual agent.
struct IndicatorVector {
    double ai = 0.0;  // action indicator, clamped to [-1, 1]
    double pi = 0.0;  // plausibility indicator
};

/// Everything a transition guard may look at. `vitality` is the liveness
/// signal derived from the agent's fact (fire: 0 once extinguished or
/// burned out, 1 while burning; brigade: remaining hit points), so death
/// conditions stay ordinary threshold predicates.
struct GuardInput {
    IndicatorVector indicators;
    double vitality = 1.0;
    Cycle cycle = 0;
};

enum class GuardSubject { Ai, Pi, Vitality };
enum class Comparator { GreaterEqual, Less };

/// Threshold predicate over one guard subject. The threshold may vary
/// over time through `threshold_at`; when unset the base value is used
/// for every cycle.
struct ThresholdCondition {
    GuardSubject subject = GuardSubject::Ai;
    Comparator comparator = Comparator::GreaterEqual;
    double threshold = 0.0;
    std::function<double(Cycle)> threshold_at;  // optional

    bool holds(const GuardInput& input) const;

    static ThresholdCondition always();  // encoded as AI >= -infinity
};

enum class ActionKind { SendAid, SendAgression, EmitNotification };

/// Action attached to a transition. `magnitude` is positive; agression
/// payloads are negated when the message is sent.
struct ActionSpec {
    ActionKind kind = ActionKind::SendAid;
    double magnitude = 0.1;
};

struct Transition {
    int from = 0;
    int to = 0;
    ThresholdCondition condition;
    std::vector<ActionSpec> actions;
};

struct StepResult {
    int state = 0;
    std::vector<ActionSpec> actions;
};

/// Augmented Transition Network: named states indexed 1..n with
/// condition-guarded transitions. Immutable once built; step() is pure.
class Atn {
public:
    Atn(std::vector<std::string> state_names, std::vector<Transition> transitions);

    int state_count() const noexcept { return static_cast<int>(state_names_.size()); }
    int initial_state() const noexcept { return 1; }
    const std::string& state_name(int state) const;
    const std::vector<Transition>& transitions() const noexcept { return transitions_; }

    /// Evaluates the outgoing transitions of `current` in declaration
    /// order and takes the first whose condition holds. Returns
    /// (current, no actions) when none fires. Throws std::out_of_range
    /// for an invalid state index.
    StepResult step(int current, const GuardInput& input) const;

private:
    std::vector<std::string> state_names_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<std::size_t>> outgoing_;  // per state, declaration order
};

/// Thresholds for the two four-state templates. `advance` guards the
/// 2 -> 3 progress transition (AI >=), `retreat` the 3 -> 2 regression
/// (AI <). Death fires whenever vitality drops below 0.5, from state 2
/// or 3 alike. Struct defaults are the fire template's.
struct ThresholdConfig {
    double advance = 0.6;
    double retreat = 0.3;
    double aid_magnitude = 0.1;
    double agression_magnitude = 0.1;
};

ThresholdConfig default_brigade_thresholds();  // advance 0.5, retreat 0.25

/// Four-state template for fire facts: 1 Creation, 2/3 active, 4 End.
/// Transitions (evaluation order per state: death, progress, regress):
///   1 -> 2  always                      (creation enters activity)
///   2 -> 4  vitality < 0.5              (extinguished or burned out)
///   2 -> 3  AI >= advance               (emits Aid + Agression)
///   3 -> 4  vitality < 0.5              (emits Aid + Agression)
///   3 -> 2  AI < retreat
/// Five transitions total; progress and regress steps move exactly one
/// state, the death exits are the only shortcuts.
Atn build_fire_atn(const ThresholdConfig& config);

/// Same shape for fire-brigade facts; vitality carries hit points, so
/// the death guard reads "hit points == 0" for integer hp.
Atn build_brigade_atn(const ThresholdConfig& config);

}  // namespace sitrep
