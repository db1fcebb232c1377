#include <doctest.h>

#include <cmath>
#include <random>

#include "sitrep/agent.hpp"

using namespace sitrep;

namespace {

Fsf fire_fsf(Cycle t, double x, double y, const std::string& site = "building#12") {
    Fsf fsf;
    fsf.key = "fire";
    fsf.timestamp = t;
    fsf.location = {x, y};
    fsf.qualifiers = {{"fieryness", "2"}, {"site", site}};
    return fsf;
}

// Frozen 30-digit reference: 10 * exp(-1).
constexpr double kPiAtY20 = 3.678794411714423216;
constexpr double kCurveAt10 = 0.419974341614026069;

}  // namespace

TEST_CASE("fire plausibility follows the exponential in Y") {
    CHECK(compute_pi_fire(3, 2, 5, 10) == 10.0);  // Y = 0
    CHECK(compute_pi_fire(10, 5, 15, 10) == doctest::Approx(kPiAtY20).epsilon(1e-12));
    CHECK(compute_pi_fire(0, 0, 0, 10) > 10.0);  // many brigades: solving likely
    CHECK_THROWS_AS(compute_pi_fire(0, 9, 0, 0), std::out_of_range);
    CHECK_THROWS_AS(compute_pi_fire(-1, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("fire plausibility is monotone in each input") {
    for (int base = 0; base <= 6; ++base) {
        CHECK(compute_pi_fire(base + 1, 4, 10, 5) < compute_pi_fire(base, 4, 10, 5));
        CHECK(compute_pi_fire(3, base + 1, 10, 5) < compute_pi_fire(3, base, 10, 5));
        CHECK(compute_pi_fire(3, 4, base + 1, 5) < compute_pi_fire(3, 4, base, 5));
        CHECK(compute_pi_fire(3, 4, 10, base + 1) > compute_pi_fire(3, 4, 10, base));
    }
}

TEST_CASE("brigade plausibility is a clamped discovery rate") {
    CHECK(compute_pi_brigade(0, 10) == 0.0);
    CHECK(compute_pi_brigade(10, 10) == 10.0);
    CHECK(compute_pi_brigade(3, 10) == 3.0);
    CHECK(compute_pi_brigade(25, 10) == 10.0);  // clamped
    CHECK_THROWS_AS(compute_pi_brigade(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(compute_pi_brigade(-1, 10), std::invalid_argument);
}

TEST_CASE("updating the carried fact rotates history and announces it") {
    FactualAgent agent(1, AgentKind::Fire, "fire|building#12", fire_fsf(0, 5, 5), 0);
    CHECK_FALSE(agent.previous_fsf().has_value());

    const AgentMessage announcement = agent.update_fsf(fire_fsf(10, 5, 5));
    CHECK(announcement.kind == MessageKind::Fsf);
    CHECK(announcement.sender == 1);
    CHECK(announcement.fsf.timestamp == 10);
    REQUIRE(agent.previous_fsf().has_value());
    CHECK(agent.previous_fsf()->timestamp == 0);
    CHECK(agent.current_fsf().timestamp == 10);

    Fsf wrong_key = fire_fsf(20, 5, 5);
    wrong_key.key = "flood";
    CHECK_THROWS_AS(agent.update_fsf(wrong_key), std::invalid_argument);
    CHECK_THROWS_AS(agent.update_fsf(fire_fsf(3, 5, 5)), std::invalid_argument);
}

TEST_CASE("action indicator reads the agent's own evolution") {
    const auto graph = default_crisis_ontology();
    const ProximityScales scales;
    FactualAgent agent(1, AgentKind::Fire, "fire|building#12", fire_fsf(10, 0, 0), 0);

    CHECK(agent.compute_ai(graph, scales, 0.0) == 1.0);  // newborn fact

    agent.update_fsf(fire_fsf(20, 0, 0));
    CHECK(agent.compute_ai(graph, scales, 0.0) == doctest::Approx(kCurveAt10).epsilon(1e-12));

    CHECK(agent.compute_ai(graph, scales, 0.7) == 1.0);    // clamped high
    CHECK(agent.compute_ai(graph, scales, -3.0) == -1.0);  // clamped low
}

TEST_CASE("acquaintances are filed by the sign of the proximity") {
    const auto graph = default_crisis_ontology();
    const ProximityScales scales;
    FactualAgent agent(1, AgentKind::Fire, "fire|b#1", fire_fsf(0, 0, 0, "b#1"), 0);

    Fsf near_fire = fire_fsf(0, 1, 0, "b#2");
    CHECK(agent.update_acquaintances(2, near_fire, graph, scales) == Acquaintance::Close);
    CHECK(agent.acquaintances().close.count(2) == 1);

    Fsf dousing;  // semantically opposed to fire (-0.8 edge)
    dousing.key = "extinguishAction";
    dousing.timestamp = 0;
    dousing.location = {0, 0};
    dousing.qualifiers = {{"unit", "u#1"}};
    CHECK(agent.update_acquaintances(3, dousing, graph, scales) == Acquaintance::Opposite);
    const double cached = agent.acquaintances().opposite.at(3);
    CHECK(cached == proximity(agent.current_fsf(), dousing, graph, scales));
    CHECK(cached < 0);

    Fsf pavement;  // no edge with fire: neutral
    pavement.key = "road";
    pavement.timestamp = 0;
    pavement.location = {0, 0};
    pavement.qualifiers = {{"site", "r#1"}};
    CHECK(agent.update_acquaintances(4, pavement, graph, scales) == Acquaintance::Neutral);
    CHECK(agent.acquaintances().close.count(4) == 0);
    CHECK(agent.acquaintances().opposite.count(4) == 0);

    // Reclassification moves an id between the maps.
    Fsf distant_past = fire_fsf(0, 1, 0, "b#2");
    agent.update_fsf(fire_fsf(5, 0, 0, "b#1"));
    CHECK(agent.update_acquaintances(2, distant_past, graph, scales) == Acquaintance::Close);
    CHECK(agent.acquaintances().close.count(2) == 1);
    CHECK(agent.acquaintances().opposite.count(2) == 0);
}

TEST_CASE("messages land in the right accumulators") {
    const auto graph = default_crisis_ontology();
    const ProximityScales scales;
    FactualAgent brigade(7, AgentKind::Brigade, "fireBrigade|u#1", [] {
        Fsf fsf;
        fsf.key = "fireBrigade";
        fsf.timestamp = 0;
        fsf.location = {2, 0};
        fsf.qualifiers = {{"unit", "u#1"}, {"hp", "10"}};
        return fsf;
    }(), 0);
    brigade.begin_cycle();

    // A fire two cells away announces itself: positive edge, so close.
    const AgentMessage fire_news = AgentMessage::fsf_message(1, fire_fsf(0, 0, 0), 0);
    const MessageEffect effect = brigade.handle_message(fire_news, graph, scales);
    CHECK(effect.classification == Acquaintance::Close);
    const double expected =
        proximity(brigade.current_fsf(), fire_news.fsf, graph, scales);
    CHECK(brigade.acquaintances().close.at(1) == expected);

    brigade.handle_message(AgentMessage::aid(1, 0.3, 0), graph, scales);
    brigade.handle_message(AgentMessage::agression(2, -0.1, 0), graph, scales);
    CHECK(brigade.received_net() == doctest::Approx(0.2).epsilon(1e-12));

    brigade.begin_cycle();
    CHECK(brigade.received_net() == 0.0);

    CHECK_THROWS_AS(AgentMessage::aid(1, -1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(AgentMessage::agression(1, 0.5, 0), std::invalid_argument);
    AgentMessage forged = AgentMessage::aid(1, 1.0, 0);
    forged.payload = -1.0;
    CHECK_THROWS_AS(brigade.handle_message(forged, graph, scales), std::invalid_argument);
}

TEST_CASE("classification is symmetric after a mutual exchange") {
    const auto graph = default_crisis_ontology();
    const ProximityScales scales;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_int_distribution<Cycle> time(0, 20);

    for (int i = 0; i < 200; ++i) {
        Fsf fa = fire_fsf(time(rng), coord(rng), coord(rng), "a");
        Fsf fb = fire_fsf(time(rng), coord(rng), coord(rng), "b");
        FactualAgent a(1, AgentKind::Fire, "fire|a", fa, 0);
        FactualAgent b(2, AgentKind::Fire, "fire|b", fb, 0);
        const Acquaintance a_files_b = a.update_acquaintances(2, fb, graph, scales);
        const Acquaintance b_files_a = b.update_acquaintances(1, fa, graph, scales);
        CHECK(a_files_b == b_files_a);
    }
}
