#include "sitrep/ontology.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sitrep/fsf.hpp"

namespace sitrep {

namespace {

constexpr std::array<std::pair<TaxonomyClass, std::string_view>, 6> kClassNames = {{
    {TaxonomyClass::Element, "Element"},
    {TaxonomyClass::Person, "Person"},
    {TaxonomyClass::Group, "Group"},
    {TaxonomyClass::Phenomenon, "Phenomenon"},
    {TaxonomyClass::Action, "Action"},
    {TaxonomyClass::Message, "Message"},
}};

double parse_proximity_value(const std::string& token, int line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, "malformed proximity value '" + token + "'");
    }
    if (!(value >= -1.0 && value <= 1.0)) {
        throw ParseError(line, "proximity out of range [-1,1]: " + token);
    }
    return value;
}

}  // namespace

TaxonomyFamily family_of(TaxonomyClass cls) noexcept {
    switch (cls) {
        case TaxonomyClass::Element:
        case TaxonomyClass::Person:
        case TaxonomyClass::Group:
            return TaxonomyFamily::Concrete;
        case TaxonomyClass::Phenomenon:
        case TaxonomyClass::Action:
        case TaxonomyClass::Message:
            break;
    }
    return TaxonomyFamily::Virtual;
}

std::string_view to_string(TaxonomyClass cls) noexcept {
    for (const auto& [value, name] : kClassNames) {
        if (value == cls) return name;
    }
    return "?";
}

std::optional<TaxonomyClass> taxonomy_class_from_string(std::string_view text) noexcept {
    for (const auto& [value, name] : kClassNames) {
        if (name == text) return value;
    }
    return std::nullopt;
}

bool OntologyGraph::has_concept(std::string_view id) const {
    return concepts_.find(std::string(id)) != concepts_.end();
}

const Concept& OntologyGraph::concept_at(const std::string& id) const {
    auto it = concepts_.find(id);
    if (it == concepts_.end()) {
        throw std::out_of_range("unknown concept '" + id + "'");
    }
    return it->second;
}

std::vector<std::string> OntologyGraph::concept_ids() const {
    std::vector<std::string> ids;
    ids.reserve(concepts_.size());
    for (const auto& [id, entry] : concepts_) ids.push_back(id);
    return ids;
}

double OntologyGraph::semantic_proximity(const std::string& a, const std::string& b) const {
    concept_at(a);
    concept_at(b);
    if (a == b) return 1.0;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = edges_.find(key);
    return it == edges_.end() ? 0.0 : it->second;
}

TaxonomyClass OntologyGraph::classify(const std::string& key) const {
    return concept_at(key).taxonomy_class;
}

void OntologyGraph::add_concept(Concept c, int line) {
    if (concepts_.count(c.id)) {
        throw ParseError(line, "duplicate concept id '" + c.id + "'");
    }
    concepts_.emplace(c.id, std::move(c));
}

void OntologyGraph::add_edge(const std::string& a, const std::string& b, double value, int line) {
    if (!has_concept(a)) throw ParseError(line, "unknown concept '" + a + "'");
    if (!has_concept(b)) throw ParseError(line, "unknown concept '" + b + "'");
    if (a == b) {
        throw ParseError(line, "self edge on '" + a + "' (self proximity is fixed at 1)");
    }
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (edges_.count(key)) {
        throw ParseError(line, "duplicate pair (" + a + ", " + b + ")");
    }
    edges_.emplace(std::move(key), value);
}

std::string OntologyGraph::serialize() const {
    std::ostringstream out;
    out << "ontology-v1\n";
    for (const auto& [id, entry] : concepts_) {
        out << "concept " << id << ' ' << to_string(entry.taxonomy_class) << '\n';
    }
    for (const auto& [pair, value] : edges_) {
        out << "prox " << pair.first << ' ' << pair.second << ' ' << format_double(value)
            << '\n';
    }
    return out.str();
}

OntologyGraph load_ontology(std::istream& in) {
    OntologyGraph graph;
    std::string raw;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream line(raw);
        std::string word;
        if (!(line >> word) || word.front() == '#') continue;
        if (!saw_header) {
            if (word != "ontology-v1") {
                throw ParseError(line_no, "expected header 'ontology-v1', got '" + word + "'");
            }
            saw_header = true;
            if (line >> word) throw ParseError(line_no, "trailing tokens after header");
            continue;
        }
        if (word == "concept") {
            std::string id, cls_name;
            if (!(line >> id >> cls_name)) {
                throw ParseError(line_no, "concept line needs '<id> <TaxonomyClass>'");
            }
            auto cls = taxonomy_class_from_string(cls_name);
            if (!cls) throw ParseError(line_no, "unknown taxonomy class '" + cls_name + "'");
            if (line >> word) throw ParseError(line_no, "trailing tokens on concept line");
            graph.add_concept(Concept{id, *cls, id}, line_no);
        } else if (word == "prox") {
            std::string a, b, value_token;
            if (!(line >> a >> b >> value_token)) {
                throw ParseError(line_no, "prox line needs '<idA> <idB> <value>'");
            }
            if (line >> word) throw ParseError(line_no, "trailing tokens on prox line");
            graph.add_edge(a, b, parse_proximity_value(value_token, line_no), line_no);
        } else {
            throw ParseError(line_no, "unknown directive '" + word + "'");
        }
    }
    if (!saw_header) throw ParseError(0, "empty document, expected 'ontology-v1' header");
    return graph;
}

OntologyGraph load_ontology_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_ontology(in);
}

OntologyGraph load_ontology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ontology file '" + path + "'");
    return load_ontology(in);
}

std::string_view default_crisis_ontology_text() noexcept {
    // Shipped as data/crisis.ontology as well; keep the two in sync.
    // Values are this project's calibration of the crisis domain. The
    // extinguishAction edges are deliberately non-metric: fire is far
    // from extinguishAction while both sit close to fireBrigade.
    static constexpr std::string_view kText = R"(ontology-v1
# Crisis-domain concepts across all six taxonomy classes.
concept building Element
concept road Element
concept fireBrigade Person
concept civilian Person
concept brigadeGroup Group
concept fire Phenomenon
concept extinguishAction Action
concept reportMessage Message
# Signed proximities, fixed up front.
prox fire fireBrigade 0.7
prox fire building 0.5
prox fire civilian 0.4
prox fire reportMessage 0.3
prox fire extinguishAction -0.8
prox fireBrigade extinguishAction 0.9
prox fireBrigade brigadeGroup 0.8
prox fireBrigade civilian 0.3
prox brigadeGroup extinguishAction 0.6
prox building road 0.4
prox building civilian 0.2
prox reportMessage fireBrigade 0.4
)";
    return kText;
}

OntologyGraph default_crisis_ontology() {
    return load_ontology_text(default_crisis_ontology_text());
}

}  // namespace sitrep
