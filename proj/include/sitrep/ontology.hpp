#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sitrep {

/// Error raised by the document parsers. Carries the 1-based line number
/// of the offending line (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// The six fixed classes of observable objects. Element, Person and Group
/// describe concrete observations; Phenomenon, Action and Message are
/// virtual objects deduced from indirect observations.
enum class TaxonomyClass {
    Element,
    Person,
    Group,
    Phenomenon,
    Action,
    Message,
};

enum class TaxonomyFamily { Concrete, Virtual };

TaxonomyFamily family_of(TaxonomyClass cls) noexcept;

std::string_view to_string(TaxonomyClass cls) noexcept;
std::optional<TaxonomyClass> taxonomy_class_from_string(std::string_view text) noexcept;

struct Concept {
    std::string id;
    TaxonomyClass taxonomy_class;
    std::string label;
};

/// Graph of domain concepts with signed pairwise semantic proximities.
///
/// Proximities live in [-1, 1]: 1 means exactly similar, -1 fully
/// dissimilar, 0 neutral. Lookups are symmetric and self-proximity is
/// always 1. The values are plain stored edges; no metric axioms (in
/// particular no triangle inequality) are assumed or enforced. The graph
/// is immutable once loaded.
class OntologyGraph {
public:
    OntologyGraph() = default;

    bool has_concept(std::string_view id) const;
    const Concept& concept_at(const std::string& id) const;
    std::size_t concept_count() const noexcept { return concepts_.size(); }
    std::vector<std::string> concept_ids() const;

    /// Signed proximity between two concepts: the stored edge value, 1 for
    /// a == b, 0 when no edge is stored. Throws std::out_of_range for
    /// unknown ids.
    double semantic_proximity(const std::string& a, const std::string& b) const;

    TaxonomyClass classify(const std::string& key) const;

    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Canonical document form (round-trips through load_ontology).
    std::string serialize() const;

private:
    friend OntologyGraph load_ontology(std::istream& in);

    void add_concept(Concept c, int line);
    void add_edge(const std::string& a, const std::string& b, double value, int line);

    std::map<std::string, Concept> concepts_;
    std::map<std::pair<std::string, std::string>, double> edges_;  // key: ordered pair
};

/// Parses an `ontology-v1` document. Duplicate concepts or duplicate pair
/// entries, out-of-range values and unknown taxonomy classes are errors.
OntologyGraph load_ontology(std::istream& in);
OntologyGraph load_ontology_text(std::string_view text);
OntologyGraph load_ontology_file(const std::string& path);

/// Text of the crisis ontology bundled with the repo (also shipped as
/// data/crisis.ontology). The concrete proximity values are this
/// project's own calibration; the domain publishes none.
std::string_view default_crisis_ontology_text() noexcept;
OntologyGraph default_crisis_ontology();

}  // namespace sitrep
