#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sitrep/ontology.hpp"

namespace sitrep {

using Cycle = std::int64_t;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double euclidean(Point a, Point b) noexcept;

/// Factual Semantic Feature: one observed fact about one object.
/// A key (a concept id) plus at least one qualifier/value pair, stamped
/// with the observation cycle and a 2-D location in world units.
struct Fsf {
    std::string key;
    std::vector<std::pair<std::string, std::string>> qualifiers;  // non-empty
    Cycle timestamp = 0;                                          // >= 0, 1 cycle = 1 simulated minute
    Point location;

    /// First value stored under `name`, or nullptr.
    const std::string* qualifier(std::string_view name) const;

    bool operator==(const Fsf& other) const;
};

/// Decay scales for the temporal and spatial proximity curves. Raw world
/// distance is divided by spatial_unit before the spatial curve is
/// applied, so the 0.2 constant keeps its shape on coordinate systems of
/// any magnitude.
struct ProximityScales {
    double time_decay = 0.2;
    double space_decay = 0.2;
    double spatial_unit = 1.0;
};

/// Temporal attenuation 4*exp(-a*dt) / (1 + exp(-a*dt))^2, in (0, 1],
/// equal to 1 at dt = 0 and strictly decreasing. Throws
/// std::invalid_argument for negative dt.
double temporal_proximity(double delta_cycles, const ProximityScales& scales);

/// Spatial attenuation: same curve over normalized distance
/// delta_distance / scales.spatial_unit.
double spatial_proximity(double delta_distance, const ProximityScales& scales);

/// Combined proximity between two facts: semantic * temporal * spatial.
/// Signed like the semantic term, symmetric in (a, b), and never larger
/// in magnitude than the semantic term alone.
double proximity(const Fsf& a, const Fsf& b, const OntologyGraph& graph,
                 const ProximityScales& scales);

/// Parses one event line:
///   fsf <key> t=<cycles> loc=(<x>,<y>) (<qualifier>=<value>)+
/// Throws ParseError on malformed input; `line` is used for diagnostics.
Fsf parse_fsf(std::string_view text, int line = 0);

/// Canonical event-line form; parse_fsf(serialize_fsf(f)) == f exactly.
std::string serialize_fsf(const Fsf& fsf);

/// Shortest decimal form of a double that parses back to the same value.
std::string format_double(double value);

/// Event stream document: `fsf-stream-v1` header, `cycle <k>` markers and
/// one FSF line per event. Cycles are stored densely from 0; markers in a
/// parsed document may skip quiet cycles, the serialized form never does.
struct FsfStream {
    std::vector<std::vector<Fsf>> cycles;

    std::string serialize() const;
    bool operator==(const FsfStream& other) const { return cycles == other.cycles; }
};

FsfStream parse_fsf_stream(std::istream& in);
FsfStream parse_fsf_stream_text(std::string_view text);
FsfStream load_fsf_stream_file(const std::string& path);

}  // namespace sitrep
