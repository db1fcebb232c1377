#include "sitrep/fsf.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sitrep {

namespace {

double parse_double_token(std::string_view token, int line, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
        throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

std::int64_t parse_int_token(std::string_view token, int line, const char* what) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, std::string("malformed ") + what + " '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

double euclidean(Point a, Point b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

const std::string* Fsf::qualifier(std::string_view name) const {
    for (const auto& [qualifier_name, value] : qualifiers) {
        if (qualifier_name == name) return &value;
    }
    return nullptr;
}

bool Fsf::operator==(const Fsf& other) const {
    return key == other.key && qualifiers == other.qualifiers &&
           timestamp == other.timestamp && location.x == other.location.x &&
           location.y == other.location.y;
}

std::string format_double(double value) {
    std::array<char, 32> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

double temporal_proximity(double delta_cycles, const ProximityScales& scales) {
    if (delta_cycles < 0) {
        throw std::invalid_argument("temporal_proximity: negative time difference");
    }
    const double e = std::exp(-scales.time_decay * delta_cycles);
    return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

double spatial_proximity(double delta_distance, const ProximityScales& scales) {
    if (delta_distance < 0) {
        throw std::invalid_argument("spatial_proximity: negative distance");
    }
    const double e = std::exp(-scales.space_decay * delta_distance / scales.spatial_unit);
    return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

double proximity(const Fsf& a, const Fsf& b, const OntologyGraph& graph,
                 const ProximityScales& scales) {
    const double semantic = graph.semantic_proximity(a.key, b.key);
    const double dt = static_cast<double>(a.timestamp >= b.timestamp
                                              ? a.timestamp - b.timestamp
                                              : b.timestamp - a.timestamp);
    const double de = euclidean(a.location, b.location);
    return semantic * temporal_proximity(dt, scales) * spatial_proximity(de, scales);
}

Fsf parse_fsf(std::string_view text, int line) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    std::string token;
    while (in >> token) tokens.push_back(token);

    if (tokens.empty() || tokens[0] != "fsf") {
        throw ParseError(line, "event line must start with 'fsf'");
    }
    if (tokens.size() < 2 || tokens[1].find('=') != std::string::npos) {
        throw ParseError(line, "missing key after 'fsf'");
    }
    if (tokens.size() < 3 || tokens[2].rfind("t=", 0) != 0) {
        throw ParseError(line, "missing 't=<cycles>' field");
    }
    if (tokens.size() < 4 || tokens[3].rfind("loc=(", 0) != 0 || tokens[3].back() != ')') {
        throw ParseError(line, "missing 'loc=(<x>,<y>)' field");
    }

    Fsf fsf;
    fsf.key = tokens[1];
    fsf.timestamp = parse_int_token(std::string_view(tokens[2]).substr(2), line, "timestamp");
    if (fsf.timestamp < 0) throw ParseError(line, "negative timestamp");

    std::string_view coords = std::string_view(tokens[3]).substr(5);
    coords.remove_suffix(1);
    auto comma = coords.find(',');
    if (comma == std::string_view::npos) {
        throw ParseError(line, "malformed coordinates '" + tokens[3] + "'");
    }
    fsf.location.x = parse_double_token(coords.substr(0, comma), line, "coordinate");
    fsf.location.y = parse_double_token(coords.substr(comma + 1), line, "coordinate");

    for (std::size_t i = 4; i < tokens.size(); ++i) {
        auto eq = tokens[i].find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ParseError(line, "malformed qualifier '" + tokens[i] + "'");
        }
        fsf.qualifiers.emplace_back(tokens[i].substr(0, eq), tokens[i].substr(eq + 1));
    }
    if (fsf.qualifiers.empty()) {
        throw ParseError(line, "an FSF needs at least one qualifier");
    }
    return fsf;
}

std::string serialize_fsf(const Fsf& fsf) {
    std::string out = "fsf " + fsf.key + " t=" + std::to_string(fsf.timestamp) + " loc=(" +
                      format_double(fsf.location.x) + ',' + format_double(fsf.location.y) + ')';
    for (const auto& [name, value] : fsf.qualifiers) {
        out += ' ';
        out += name;
        out += '=';
        out += value;
    }
    return out;
}

std::string FsfStream::serialize() const {
    std::ostringstream out;
    out << "fsf-stream-v1\n";
    for (std::size_t k = 0; k < cycles.size(); ++k) {
        out << "cycle " << k << '\n';
        for (const Fsf& fsf : cycles[k]) {
            out << serialize_fsf(fsf) << '\n';
        }
    }
    return out.str();
}

FsfStream parse_fsf_stream(std::istream& in) {
    FsfStream stream;
    std::string raw;
    int line_no = 0;
    bool saw_header = false;
    std::int64_t current = -1;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream probe(raw);
        std::string word;
        if (!(probe >> word) || word.front() == '#') continue;
        if (!saw_header) {
            if (word != "fsf-stream-v1") {
                throw ParseError(line_no, "expected header 'fsf-stream-v1', got '" + word + "'");
            }
            saw_header = true;
            continue;
        }
        if (word == "cycle") {
            std::string index_token;
            if (!(probe >> index_token)) throw ParseError(line_no, "cycle marker needs an index");
            std::int64_t index = parse_int_token(index_token, line_no, "cycle index");
            if (index <= current) {
                throw ParseError(line_no, "cycle markers must be strictly increasing");
            }
            current = index;
            if (static_cast<std::size_t>(index) >= stream.cycles.size()) {
                stream.cycles.resize(static_cast<std::size_t>(index) + 1);
            }
        } else if (word == "fsf") {
            if (current < 0) throw ParseError(line_no, "event line before any cycle marker");
            stream.cycles[static_cast<std::size_t>(current)].push_back(parse_fsf(raw, line_no));
        } else {
            throw ParseError(line_no, "unknown directive '" + word + "'");
        }
    }
    if (!saw_header) throw ParseError(0, "empty document, expected 'fsf-stream-v1' header");
    return stream;
}

FsfStream parse_fsf_stream_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_fsf_stream(in);
}

FsfStream load_fsf_stream_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stream file '" + path + "'");
    return parse_fsf_stream(in);
}

}  // namespace sitrep
