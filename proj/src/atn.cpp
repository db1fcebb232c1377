#include "sitrep/atn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sitrep {

bool ThresholdCondition::holds(const GuardInput& input) const {
    double observed = 0.0;
    switch (subject) {
        case GuardSubject::Ai: observed = input.indicators.ai; break;
        case GuardSubject::Pi: observed = input.indicators.pi; break;
        case GuardSubject::Vitality: observed = input.vitality; break;
    }
    const double limit = threshold_at ? threshold_at(input.cycle) : threshold;
    return comparator == Comparator::GreaterEqual ? observed >= limit : observed < limit;
}

ThresholdCondition ThresholdCondition::always() {
    return ThresholdCondition{GuardSubject::Ai, Comparator::GreaterEqual,
                              std::numeric_limits<double>::lowest(), nullptr};
}

Atn::Atn(std::vector<std::string> state_names, std::vector<Transition> transitions)
    : state_names_(std::move(state_names)), transitions_(std::move(transitions)) {
    if (state_names_.empty()) throw std::invalid_argument("ATN needs at least one state");
    outgoing_.resize(state_names_.size() + 1);
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const Transition& t = transitions_[i];
        if (t.from < 1 || t.from > state_count() || t.to < 1 || t.to > state_count()) {
            throw std::invalid_argument("transition references a missing state");
        }
        if (!t.condition.threshold_at && !std::isfinite(t.condition.threshold)) {
            throw std::invalid_argument("transition threshold must be finite");
        }
        for (const ActionSpec& action : t.actions) {
            if (!(action.magnitude > 0)) {
                throw std::invalid_argument("action magnitude must be positive");
            }
        }
        outgoing_[static_cast<std::size_t>(t.from)].push_back(i);
    }
}

const std::string& Atn::state_name(int state) const {
    if (state < 1 || state > state_count()) throw std::out_of_range("invalid state index");
    return state_names_[static_cast<std::size_t>(state - 1)];
}

StepResult Atn::step(int current, const GuardInput& input) const {
    if (current < 1 || current > state_count()) throw std::out_of_range("invalid state index");
    for (std::size_t index : outgoing_[static_cast<std::size_t>(current)]) {
        const Transition& t = transitions_[index];
        if (t.condition.holds(input)) {
            return StepResult{t.to, t.actions};
        }
    }
    return StepResult{current, {}};
}

namespace {

// Shared four-state skeleton. Declaration order per state puts the death
// exit first so a dead object never keeps progressing on a high AI.
Atn build_four_state_template(const ThresholdConfig& config) {
    const ThresholdCondition dead{GuardSubject::Vitality, Comparator::Less, 0.5, nullptr};
    const ThresholdCondition advance{GuardSubject::Ai, Comparator::GreaterEqual,
                                     config.advance, nullptr};
    const ThresholdCondition retreat{GuardSubject::Ai, Comparator::Less, config.retreat,
                                     nullptr};
    const std::vector<ActionSpec> aid_and_agression = {
        ActionSpec{ActionKind::SendAid, config.aid_magnitude},
        ActionSpec{ActionKind::SendAgression, config.agression_magnitude},
    };
    return Atn{{"Creation", "Active", "Engaged", "End"},
               {
                   Transition{1, 2, ThresholdCondition::always(), {}},
                   Transition{2, 4, dead, {}},
                   Transition{2, 3, advance, aid_and_agression},
                   Transition{3, 4, dead, aid_and_agression},
                   Transition{3, 2, retreat, {}},
               }};
}

}  // namespace

ThresholdConfig default_brigade_thresholds() {
    return ThresholdConfig{0.5, 0.25, 0.1, 0.1};
}

Atn build_fire_atn(const ThresholdConfig& config) {
    return build_four_state_template(config);
}

Atn build_brigade_atn(const ThresholdConfig& config) {
    return build_four_state_template(config);
}

}  // namespace sitrep
