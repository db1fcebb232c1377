#include <doctest.h>

#include <cmath>
#include <random>

#include "sitrep/fsf.hpp"
#include "sitrep/ontology.hpp"

using namespace sitrep;

namespace {

// Independent evaluation of the attenuation curve: the implementation's
// 4 e^-u / (1 + e^-u)^2 equals sech^2(u/2), computed here in long double.
double sech_squared_half(double u) {
    const long double c = std::cosh(static_cast<long double>(u) / 2.0L);
    return static_cast<double>(1.0L / (c * c));
}

// High-precision reference values, frozen from an independent
// 30-digit evaluation of the closed form with decay 0.2.
constexpr double kCurveAt10 = 0.419974341614026069;
constexpr double kCurveAt1 = 0.990066290847439778;
constexpr double kCurveAt5 = 0.786447732965927410;

}  // namespace

TEST_CASE("temporal proximity matches the frozen reference values") {
    const ProximityScales scales;
    CHECK(temporal_proximity(0, scales) == 1.0);
    CHECK(temporal_proximity(10, scales) == doctest::Approx(kCurveAt10).epsilon(1e-12));
    CHECK(temporal_proximity(1, scales) == doctest::Approx(kCurveAt1).epsilon(1e-12));
    CHECK(temporal_proximity(5, scales) == doctest::Approx(kCurveAt5).epsilon(1e-12));
    CHECK(temporal_proximity(1000, scales) < 1e-8);
    CHECK_THROWS_AS(temporal_proximity(-1, scales), std::invalid_argument);
}

TEST_CASE("spatial proximity is the same curve over normalized distance") {
    const ProximityScales scales;
    CHECK(spatial_proximity(0, scales) == 1.0);
    CHECK(spatial_proximity(10, scales) == temporal_proximity(10, scales));

    ProximityScales block;
    block.spatial_unit = 5.0;
    CHECK(spatial_proximity(5, block) == spatial_proximity(1, ProximityScales{}));
    CHECK_THROWS_AS(spatial_proximity(-0.5, scales), std::invalid_argument);
}

TEST_CASE("attenuation curves are strictly decreasing into (0, 1]") {
    const ProximityScales scales;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 80.0);
    for (int i = 0; i < 1000; ++i) {
        double x = dist(rng), y = dist(rng);
        if (x == y) continue;
        if (x > y) std::swap(x, y);
        const double px = temporal_proximity(x, scales);
        const double py = temporal_proximity(y, scales);
        CHECK(px > py);
        CHECK(px <= 1.0);
        CHECK(py > 0.0);
    }
}

TEST_CASE("curves agree with the independent sech form") {
    const ProximityScales scales;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 60.0);
    for (int i = 0; i < 1000; ++i) {
        const double dt = dist(rng);
        const double expected = sech_squared_half(scales.time_decay * dt);
        CHECK(temporal_proximity(dt, scales) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("combined proximity multiplies the three terms") {
    const auto graph = default_crisis_ontology();
    const ProximityScales scales;

    Fsf a;
    a.key = "fire";
    a.timestamp = 0;
    a.location = {0, 0};
    a.qualifiers = {{"site", "b#1"}};

    SUBCASE("identity case") { CHECK(proximity(a, a, graph, scales) == 1.0); }

    SUBCASE("time-shifted copy attenuates by the temporal term") {
        Fsf b = a;
        b.timestamp = 10;
        CHECK(proximity(a, b, graph, scales) == doctest::Approx(kCurveAt10).epsilon(1e-12));
        CHECK(proximity(a, b, graph, scales) == proximity(b, a, graph, scales));
    }

    SUBCASE("neutral semantic pair kills the product") {
        Fsf b = a;
        b.key = "road";  // no stored edge with fire
        b.qualifiers = {{"site", "r#1"}};
        CHECK(proximity(a, b, graph, scales) == 0.0);
    }

    SUBCASE("attenuation never exceeds the semantic magnitude") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> coord(-40.0, 40.0);
        std::uniform_int_distribution<Cycle> time(0, 200);
        const auto ids = graph.concept_ids();
        std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
        for (int i = 0; i < 500; ++i) {
            Fsf x, y;
            x.key = ids[pick(rng)];
            y.key = ids[pick(rng)];
            x.qualifiers = y.qualifiers = {{"q", "v"}};
            x.timestamp = time(rng);
            y.timestamp = time(rng);
            x.location = {coord(rng), coord(rng)};
            y.location = {coord(rng), coord(rng)};
            const double p = proximity(x, y, graph, scales);
            const double semantic = graph.semantic_proximity(x.key, y.key);
            CHECK(std::abs(p) <= std::abs(semantic) + 1e-15);
            CHECK(p == proximity(y, x, graph, scales));
        }
    }

    SUBCASE("unknown key throws") {
        Fsf b = a;
        b.key = "dragon";
        CHECK_THROWS_AS(proximity(a, b, graph, scales), std::out_of_range);
    }
}

TEST_CASE("event line parsing matches the documented grammar") {
    const Fsf fsf =
        parse_fsf("fsf fire t=600 loc=(12.0,34.0) intensity=strong site=building#12");
    CHECK(fsf.key == "fire");
    CHECK(fsf.timestamp == 600);
    CHECK(fsf.location.x == 12.0);
    CHECK(fsf.location.y == 34.0);
    REQUIRE(fsf.qualifiers.size() == 2);
    CHECK(fsf.qualifiers[0] == std::pair<std::string, std::string>{"intensity", "strong"});
    CHECK(fsf.qualifiers[1] == std::pair<std::string, std::string>{"site", "building#12"});
}

TEST_CASE("event line validation errors") {
    CHECK_THROWS_AS(parse_fsf("fsf fire t=600 loc=(0,0)"), ParseError);  // no qualifiers
    CHECK_THROWS_AS(parse_fsf("fsf t=600 loc=(0,0) a=b"), ParseError);   // missing key
    CHECK_THROWS_AS(parse_fsf("fsf fire loc=(0,0) a=b"), ParseError);
    CHECK_THROWS_AS(parse_fsf("fsf fire t=x loc=(0,0) a=b"), ParseError);
    CHECK_THROWS_AS(parse_fsf("fsf fire t=-2 loc=(0,0) a=b"), ParseError);
    CHECK_THROWS_AS(parse_fsf("fsf fire t=1 loc=(0;0) a=b"), ParseError);
    CHECK_THROWS_AS(parse_fsf("fsf fire t=1 loc=(0,zz) a=b"), ParseError);
    CHECK_THROWS_AS(parse_fsf("event fire t=1 loc=(0,0) a=b"), ParseError);
}

TEST_CASE("parse-serialize identity on randomized facts") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> coord(-1e4, 1e4);
    std::uniform_int_distribution<Cycle> time(0, 100000);
    std::uniform_int_distribution<int> quals(1, 4);
    for (int i = 0; i < 300; ++i) {
        Fsf fsf;
        fsf.key = "fire";
        fsf.timestamp = time(rng);
        fsf.location = {coord(rng), coord(rng)};
        const int n = quals(rng);
        for (int q = 0; q < n; ++q) {
            fsf.qualifiers.emplace_back("q" + std::to_string(q),
                                        "v#" + std::to_string(rng() % 1000));
        }
        const std::string line = serialize_fsf(fsf);
        CHECK(parse_fsf(line) == fsf);
        CHECK(serialize_fsf(parse_fsf(line)) == line);
    }
}

TEST_CASE("canonical lines are a fixed point of parse then serialize") {
    const std::string line = "fsf fire t=600 loc=(12,34) intensity=strong site=building#12";
    CHECK(serialize_fsf(parse_fsf(line)) == line);
}

TEST_CASE("stream documents round-trip") {
    FsfStream stream;
    stream.cycles.resize(3);
    stream.cycles[0].push_back(parse_fsf("fsf fire t=0 loc=(5,5) fieryness=1 site=b#1"));
    stream.cycles[2].push_back(parse_fsf("fsf fireBrigade t=2 loc=(0,0) unit=u#1 hp=10"));
    const std::string text = stream.serialize();
    const FsfStream reparsed = parse_fsf_stream_text(text);
    CHECK(reparsed == stream);
    CHECK(reparsed.serialize() == text);
}

TEST_CASE("stream markers may skip quiet cycles but never go backwards") {
    const FsfStream sparse = parse_fsf_stream_text(
        "fsf-stream-v1\n"
        "cycle 0\n"
        "fsf fire t=0 loc=(1,1) site=a fieryness=1\n"
        "cycle 4\n"
        "fsf fire t=4 loc=(1,1) site=a fieryness=2\n");
    CHECK(sparse.cycles.size() == 5);
    CHECK(sparse.cycles[1].empty());
    CHECK(sparse.cycles[4].size() == 1);

    CHECK_THROWS_AS(parse_fsf_stream_text("fsf-stream-v1\ncycle 3\ncycle 2\n"), ParseError);
    CHECK_THROWS_AS(
        parse_fsf_stream_text("fsf-stream-v1\nfsf fire t=0 loc=(0,0) a=b\n"), ParseError);
    CHECK_THROWS_AS(parse_fsf_stream_text("who-knows\n"), ParseError);
}
