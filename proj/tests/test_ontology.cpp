#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sitrep/ontology.hpp"

using namespace sitrep;

TEST_CASE("taxonomy has six classes split into two families") {
    CHECK(family_of(TaxonomyClass::Element) == TaxonomyFamily::Concrete);
    CHECK(family_of(TaxonomyClass::Person) == TaxonomyFamily::Concrete);
    CHECK(family_of(TaxonomyClass::Group) == TaxonomyFamily::Concrete);
    CHECK(family_of(TaxonomyClass::Phenomenon) == TaxonomyFamily::Virtual);
    CHECK(family_of(TaxonomyClass::Action) == TaxonomyFamily::Virtual);
    CHECK(family_of(TaxonomyClass::Message) == TaxonomyFamily::Virtual);

    CHECK(taxonomy_class_from_string("Element") == TaxonomyClass::Element);
    CHECK(taxonomy_class_from_string("Message") == TaxonomyClass::Message);
    CHECK_FALSE(taxonomy_class_from_string("Vehicle").has_value());
}

TEST_CASE("stored edges round-trip through lookup") {
    const auto graph = load_ontology_text(
        "ontology-v1\n"
        "concept fire Phenomenon\n"
        "concept explosion Phenomenon\n"
        "prox fire explosion 0.8\n");
    CHECK(graph.semantic_proximity("fire", "explosion") == 0.8);
    CHECK(graph.semantic_proximity("explosion", "fire") == 0.8);
}

TEST_CASE("self proximity is 1 and missing edges default to 0") {
    const auto graph = default_crisis_ontology();
    CHECK(graph.semantic_proximity("fire", "fire") == 1.0);
    CHECK(graph.semantic_proximity("fire", "road") == 0.0);  // no stored edge
}

TEST_CASE("a stored full dissimilarity reads back as -1") {
    const auto graph = load_ontology_text(
        "ontology-v1\n"
        "concept fire Phenomenon\n"
        "concept flood Phenomenon\n"
        "prox fire flood -1\n");
    CHECK(graph.semantic_proximity("fire", "flood") == -1.0);
}

TEST_CASE("document validation errors") {
    CHECK_THROWS_WITH_AS(load_ontology_text("ontology-v1\n"
                                            "concept a Element\n"
                                            "concept b Element\n"
                                            "prox a b 1.5\n"),
                         doctest::Contains("proximity out of range"), ParseError);
    CHECK_THROWS_AS(load_ontology_text("ontology-v1\nconcept a Vehicle\n"), ParseError);
    CHECK_THROWS_WITH_AS(load_ontology_text("ontology-v1\n"
                                            "concept a Element\n"
                                            "concept a Element\n"),
                         doctest::Contains("duplicate concept"), ParseError);
    CHECK_THROWS_WITH_AS(load_ontology_text("ontology-v1\n"
                                            "concept a Element\n"
                                            "concept b Element\n"
                                            "prox a b 0.5\n"
                                            "prox b a 0.2\n"),
                         doctest::Contains("duplicate pair"), ParseError);
    CHECK_THROWS_AS(load_ontology_text("ontology-v1\nprox a b 0.5\n"), ParseError);
    CHECK_THROWS_AS(load_ontology_text("ontology-v1\nconcept a Element\nprox a a 1\n"),
                    ParseError);
    CHECK_THROWS_AS(load_ontology_text("not-an-ontology\n"), ParseError);
    CHECK_THROWS_AS(load_ontology_text(""), ParseError);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        load_ontology_text("ontology-v1\nconcept a Element\nprox a a 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("unknown concept lookups throw") {
    const auto graph = default_crisis_ontology();
    CHECK_THROWS_AS(graph.semantic_proximity("fire", "dragon"), std::out_of_range);
    CHECK_THROWS_AS(graph.classify("dragon"), std::out_of_range);
}

TEST_CASE("bundled crisis ontology covers all six classes") {
    const auto graph = default_crisis_ontology();
    CHECK(graph.concept_count() >= 6);
    bool seen[6] = {};
    for (const std::string& id : graph.concept_ids()) {
        seen[static_cast<int>(graph.classify(id))] = true;
    }
    for (bool s : seen) CHECK(s);

    CHECK(graph.classify("fire") == TaxonomyClass::Phenomenon);
    CHECK(graph.classify("building") == TaxonomyClass::Element);
    CHECK(graph.classify("fireBrigade") == TaxonomyClass::Person);
}

TEST_CASE("bundled data file matches the embedded ontology") {
    std::ifstream in(std::string(SITREP_DATA_DIR) + "/crisis.ontology", std::ios::binary);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == default_crisis_ontology_text());
}

TEST_CASE("symmetry and range hold for every stored pair") {
    const auto graph = default_crisis_ontology();
    const auto ids = graph.concept_ids();
    for (const auto& a : ids) {
        for (const auto& b : ids) {
            const double p = graph.semantic_proximity(a, b);
            CHECK(p == graph.semantic_proximity(b, a));
            CHECK(p >= -1.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("serialization round-trips lookups and text") {
    const auto graph = default_crisis_ontology();
    const std::string text = graph.serialize();
    const auto reloaded = load_ontology_text(text);
    CHECK(reloaded.serialize() == text);
    const auto ids = graph.concept_ids();
    for (const auto& a : ids) {
        for (const auto& b : ids) {
            CHECK(graph.semantic_proximity(a, b) == reloaded.semantic_proximity(a, b));
        }
    }
}

TEST_CASE("triangle inequality is not enforced") {
    // As distances d = 1 - proximity: d(fire, extinguishAction) = 1.8
    // while d(fire, fireBrigade) + d(fireBrigade, extinguishAction) = 0.4.
    const auto graph = default_crisis_ontology();
    const double d_ac = 1.0 - graph.semantic_proximity("fire", "extinguishAction");
    const double d_ab = 1.0 - graph.semantic_proximity("fire", "fireBrigade");
    const double d_bc = 1.0 - graph.semantic_proximity("fireBrigade", "extinguishAction");
    CHECK(d_ac > d_ab + d_bc);  // violated, and the graph loaded fine
}
