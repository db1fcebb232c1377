#include <doctest.h>

#include <cmath>
#include <vector>

#include "sitrep/atn.hpp"

using namespace sitrep;

namespace {

GuardInput input_of(double ai, double vitality = 1.0, Cycle cycle = 0, double pi = 5.0) {
    return GuardInput{IndicatorVector{ai, pi}, vitality, cycle};
}

}  // namespace

TEST_CASE("four-state templates have the documented shape") {
    const Atn fire = build_fire_atn(ThresholdConfig{});
    CHECK(fire.state_count() == 4);
    CHECK(fire.transitions().size() == 5);
    CHECK(fire.initial_state() == 1);
    CHECK(fire.state_name(1) == "Creation");
    CHECK(fire.state_name(4) == "End");

    // Progress and regress transitions move exactly one state; the only
    // shortcuts are the vitality-guarded death exits.
    for (const Transition& t : fire.transitions()) {
        if (t.condition.subject == GuardSubject::Vitality) {
            CHECK(t.to == 4);
        } else {
            CHECK(std::abs(t.from - t.to) == 1);
        }
    }

    const Atn brigade = build_brigade_atn(default_brigade_thresholds());
    CHECK(brigade.state_count() == 4);
    CHECK(brigade.transitions().size() == 5);
}

TEST_CASE("creation always enters activity") {
    const Atn fire = build_fire_atn(ThresholdConfig{});
    for (double ai : {-1.0, -0.5, 0.0, 0.3, 1.0}) {
        const StepResult r = fire.step(1, input_of(ai));
        CHECK(r.state == 2);
        CHECK(r.actions.empty());
    }
}

TEST_CASE("2 to 3 fires on the advance threshold and emits aid plus agression") {
    const Atn fire = build_fire_atn(ThresholdConfig{});
    const StepResult r = fire.step(2, input_of(0.6));
    CHECK(r.state == 3);
    REQUIRE(r.actions.size() == 2);
    CHECK(r.actions[0].kind == ActionKind::SendAid);
    CHECK(r.actions[1].kind == ActionKind::SendAgression);
    CHECK(r.actions[0].magnitude == 0.1);

    CHECK(fire.step(2, input_of(0.59)).state == 2);  // below threshold, no move
}

TEST_CASE("3 regresses to 2 below the retreat threshold without actions") {
    const Atn fire = build_fire_atn(ThresholdConfig{});
    const StepResult r = fire.step(3, input_of(0.29));
    CHECK(r.state == 2);
    CHECK(r.actions.empty());
    CHECK(fire.step(3, input_of(0.3)).state == 3);   // at threshold, stays
    CHECK(fire.step(2, input_of(0.29)).state == 2);  // no regression out of 2
}

TEST_CASE("death exits fire from either active state") {
    const Atn fire = build_fire_atn(ThresholdConfig{});
    CHECK(fire.step(2, input_of(1.0, 0.0)).state == 4);
    const StepResult from_engaged = fire.step(3, input_of(1.0, 0.0));
    CHECK(from_engaged.state == 4);
    CHECK(from_engaged.actions.size() == 2);  // last aid/agression burst

    const Atn brigade = build_brigade_atn(default_brigade_thresholds());
    CHECK(brigade.step(2, input_of(0.9, 0.0)).state == 4);  // hit points gone
    CHECK(brigade.step(3, input_of(0.9, 3.0)).state == 3);  // hp 3, keeps going
}

TEST_CASE("the end state is absorbing and silent") {
    const Atn fire = build_fire_atn(ThresholdConfig{});
    for (double ai = -1.0; ai <= 1.0; ai += 0.125) {
        for (double vitality : {0.0, 1.0}) {
            const StepResult r = fire.step(4, input_of(ai, vitality));
            CHECK(r.state == 4);
            CHECK(r.actions.empty());
        }
    }
}

TEST_CASE("progress is monotone under rising AI") {
    const Atn fire = build_fire_atn(ThresholdConfig{});
    int state = 1;
    int previous = 1;
    for (double ai = -1.0; ai <= 1.0; ai += 0.01) {
        state = fire.step(state, input_of(ai)).state;
        CHECK(state >= previous);
        previous = state;
    }
    CHECK(state == 3);
}

TEST_CASE("advance and retreat bands cannot overlap") {
    const ThresholdConfig config;
    for (double ai = -1.0; ai <= 1.0; ai += 0.001) {
        const bool advances = ai >= config.advance;
        const bool retreats = ai < config.retreat;
        CHECK_FALSE(advances && retreats);
    }
}

TEST_CASE("step is deterministic over the full input grid") {
    const Atn fire = build_fire_atn(ThresholdConfig{});
    for (int state = 1; state <= 4; ++state) {
        for (double ai = -1.0; ai <= 1.0; ai += 0.05) {
            for (double vitality : {0.0, 1.0}) {
                const GuardInput input = input_of(ai, vitality);
                const StepResult first = fire.step(state, input);
                const StepResult second = fire.step(state, input);
                CHECK(first.state == second.state);
                CHECK(first.actions.size() == second.actions.size());
            }
        }
    }
}

TEST_CASE("thresholds may vary over time") {
    ThresholdCondition late_gate{GuardSubject::Ai, Comparator::GreaterEqual, 0.0,
                                 [](Cycle cycle) { return cycle < 5 ? 0.9 : 0.1; }};
    const Atn atn{{"Creation", "Active"}, {Transition{1, 2, late_gate, {}}}};
    CHECK(atn.step(1, input_of(0.5, 1.0, 0)).state == 1);  // early: gate at 0.9
    CHECK(atn.step(1, input_of(0.5, 1.0, 6)).state == 2);  // later: gate at 0.1
}

TEST_CASE("construction validates its inputs") {
    CHECK_THROWS_AS(Atn({"only"}, {Transition{1, 2, ThresholdCondition::always(), {}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        Atn({"a", "b"},
            {Transition{1, 2, ThresholdCondition{GuardSubject::Ai, Comparator::Less,
                                                 std::nan("")},
                        {}}}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        Atn({"a", "b"}, {Transition{1, 2, ThresholdCondition::always(),
                                    {ActionSpec{ActionKind::SendAid, 0.0}}}}),
        std::invalid_argument);
    const Atn fire = build_fire_atn(ThresholdConfig{});
    CHECK_THROWS_AS(fire.step(0, input_of(0.0)), std::out_of_range);
    CHECK_THROWS_AS(fire.step(5, input_of(0.0)), std::out_of_range);
}
