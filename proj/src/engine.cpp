#include "sitrep/engine.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sitrep {

namespace {

constexpr double kIndicatorTolerance = 1e-9;
constexpr int kEndState = 4;

int parse_int_qualifier(const std::string& value, const char* what) {
    int parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument(std::string("malformed ") + what + " qualifier '" + value +
                                    "'");
    }
    return parsed;
}

double parse_double_value(const std::string& value, const std::string& key) {
    double parsed = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("config key '" + key + "' needs a number, got '" + value +
                                    "'");
    }
    return parsed;
}

std::int64_t parse_int_value(const std::string& value, const std::string& key) {
    std::int64_t parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("config key '" + key + "' needs an integer, got '" + value +
                                    "'");
    }
    return parsed;
}

}  // namespace

void EngineConfig::validate() const {
    if (!(scales.time_decay > 0) || !(scales.space_decay > 0) || !(scales.spatial_unit > 0)) {
        throw std::invalid_argument("proximity scales must be positive");
    }
    if (neighbor_radius < 0 || brigade_radius < 0) {
        throw std::invalid_argument("radii must be non-negative");
    }
    if (lateness_window < 0) throw std::invalid_argument("lateness window must be >= 0");
    if (discovery_window < 1) throw std::invalid_argument("discovery window must be >= 1");
    if (default_fieryness < 0 || default_fieryness > 8) {
        throw std::invalid_argument("default fieryness must be in 0..8");
    }
    if (default_brigade_hp < 0) throw std::invalid_argument("default hp must be >= 0");
    for (const ThresholdConfig* t : {&fire_thresholds, &brigade_thresholds}) {
        if (!std::isfinite(t->advance) || !std::isfinite(t->retreat)) {
            throw std::invalid_argument("thresholds must be finite");
        }
        if (!(t->aid_magnitude > 0) || !(t->agression_magnitude > 0)) {
            throw std::invalid_argument("message magnitudes must be positive");
        }
    }
    if (fire_identity.empty() || brigade_identity.empty()) {
        throw std::invalid_argument("identity qualifiers must be non-empty");
    }
}

void apply_override(EngineConfig& config, const std::string& key, const std::string& value) {
    if (key == "scales.time_decay") {
        config.scales.time_decay = parse_double_value(value, key);
    } else if (key == "scales.space_decay") {
        config.scales.space_decay = parse_double_value(value, key);
    } else if (key == "scales.spatial_unit") {
        config.scales.spatial_unit = parse_double_value(value, key);
    } else if (key == "thresholds.fire.advance") {
        config.fire_thresholds.advance = parse_double_value(value, key);
    } else if (key == "thresholds.fire.retreat") {
        config.fire_thresholds.retreat = parse_double_value(value, key);
    } else if (key == "thresholds.brigade.advance") {
        config.brigade_thresholds.advance = parse_double_value(value, key);
    } else if (key == "thresholds.brigade.retreat") {
        config.brigade_thresholds.retreat = parse_double_value(value, key);
    } else if (key == "magnitudes.aid") {
        const double v = parse_double_value(value, key);
        config.fire_thresholds.aid_magnitude = v;
        config.brigade_thresholds.aid_magnitude = v;
    } else if (key == "magnitudes.agression") {
        const double v = parse_double_value(value, key);
        config.fire_thresholds.agression_magnitude = v;
        config.brigade_thresholds.agression_magnitude = v;
    } else if (key == "radii.neighbor") {
        config.neighbor_radius = parse_double_value(value, key);
    } else if (key == "radii.brigade") {
        config.brigade_radius = parse_double_value(value, key);
    } else if (key == "lateness_window") {
        config.lateness_window = parse_int_value(value, key);
    } else if (key == "discovery_window") {
        config.discovery_window = parse_int_value(value, key);
    } else if (key == "defaults.fieryness") {
        config.default_fieryness = static_cast<int>(parse_int_value(value, key));
    } else if (key == "defaults.brigade_hp") {
        config.default_brigade_hp = static_cast<int>(parse_int_value(value, key));
    } else if (key == "identity.fire") {
        config.fire_identity = value;
    } else if (key == "identity.brigade") {
        config.brigade_identity = value;
    } else if (key == "seed") {
        config.seed = static_cast<std::uint64_t>(parse_int_value(value, key));
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

std::string to_csv_row(const CycleMetrics& m) {
    std::ostringstream out;
    out << m.cycle << ',' << m.state_changes << ',' << m.indicator_variations << ','
        << m.messages_sent << ',' << m.activity << ',' << m.perceived_fires << ','
        << m.alive_agents;
    return out.str();
}

std::string metrics_to_csv(const std::vector<CycleMetrics>& series) {
    std::string out{kMetricsCsvHeader};
    out += '\n';
    for (const CycleMetrics& m : series) {
        out += to_csv_row(m);
        out += '\n';
    }
    return out;
}

Engine::Engine(OntologyGraph graph, EngineConfig config)
    : graph_(std::move(graph)),
      config_(std::move(config)),
      fire_atn_(build_fire_atn(config_.fire_thresholds)),
      brigade_atn_(build_brigade_atn(config_.brigade_thresholds)) {
    config_.validate();
}

void Engine::enqueue_broadcast(AgentMessage msg) {
    bus_.push_back(Envelope{std::move(msg), std::nullopt});
    ++stats_.send_events;
    ++stats_.broadcast_sent;
    ++messages_accum_;
}

void Engine::enqueue_targeted(AgentMessage msg, AgentId recipient) {
    bus_.push_back(Envelope{std::move(msg), recipient});
    ++stats_.send_events;
    ++stats_.targeted_sent;
    ++messages_accum_;
}

Engine::Vitals Engine::parse_vitals(const Fsf& fsf, AgentKind kind,
                                    const Vitals* previous) const {
    Vitals vitals;
    if (kind == AgentKind::Fire) {
        if (const std::string* raw = fsf.qualifier("fieryness")) {
            vitals.fieryness = parse_int_qualifier(*raw, "fieryness");
            if (vitals.fieryness < 0 || vitals.fieryness > 8) {
                throw std::invalid_argument("fieryness out of range 0..8: " + *raw);
            }
        } else {
            vitals.fieryness = previous ? previous->fieryness : config_.default_fieryness;
        }
    } else {
        if (const std::string* raw = fsf.qualifier("hp")) {
            vitals.hp = parse_int_qualifier(*raw, "hp");
            if (vitals.hp < 0) throw std::invalid_argument("hp must be >= 0: " + *raw);
        } else {
            vitals.hp = previous ? previous->hp : config_.default_brigade_hp;
        }
    }
    return vitals;
}

RoutingOutcome Engine::ingest(const Fsf& fsf) {
    if (fsf.timestamp > cycle_) {
        throw std::invalid_argument("fact from the future: t=" + std::to_string(fsf.timestamp) +
                                    " at cycle " + std::to_string(cycle_));
    }
    if (fsf.timestamp + config_.lateness_window < cycle_) {
        throw std::invalid_argument("stale fact beyond lateness window: t=" +
                                    std::to_string(fsf.timestamp) + " at cycle " +
                                    std::to_string(cycle_));
    }
    const TaxonomyClass cls = graph_.classify(fsf.key);  // throws on unknown concept

    AgentKind kind;
    const std::string* identity_qualifier = nullptr;
    if (cls == TaxonomyClass::Phenomenon) {
        kind = AgentKind::Fire;
        identity_qualifier = &config_.fire_identity;
    } else if (cls == TaxonomyClass::Person) {
        kind = AgentKind::Brigade;
        identity_qualifier = &config_.brigade_identity;
    } else {
        throw std::invalid_argument("no agent kind registered for taxonomy class '" +
                                    std::string(to_string(cls)) + "' (key '" + fsf.key + "')");
    }

    const std::string* identity_value = fsf.qualifier(*identity_qualifier);
    if (!identity_value) {
        throw std::invalid_argument("fact with key '" + fsf.key +
                                    "' lacks its identity qualifier '" + *identity_qualifier +
                                    "'");
    }
    const std::string identity = fsf.key + "|" + *identity_value;

    if (auto it = identity_index_.find(identity); it != identity_index_.end()) {
        FactualAgent& agent = agents_.at(it->second);
        vitals_[agent.id()] = parse_vitals(fsf, kind, &vitals_.at(agent.id()));
        AgentMessage announcement = agent.update_fsf(fsf);
        agent.refresh_acquaintances(graph_, config_.scales);
        enqueue_broadcast(std::move(announcement));
        return RoutingOutcome::Updated;
    }

    const AgentId id = next_id_++;
    FactualAgent agent(id, kind, identity, fsf, cycle_);
    vitals_[id] = parse_vitals(fsf, kind, nullptr);
    for (const auto& [peer_id, peer] : agents_) {
        if (peer.alive()) agent.learn_peer(peer_id, peer.current_fsf());
    }
    agent.refresh_acquaintances(graph_, config_.scales);
    agents_.emplace(id, std::move(agent));
    identity_index_.emplace(identity, id);
    creation_log_.push_back(CreationEvent{cycle_, fsf.location, kind});
    enqueue_broadcast(AgentMessage::fsf_message(id, fsf, cycle_));
    return RoutingOutcome::Created;
}

double Engine::vitality_of(const FactualAgent& agent) const {
    const Vitals& vitals = vitals_.at(agent.id());
    if (agent.kind() == AgentKind::Fire) {
        return (vitals.fieryness >= 1 && vitals.fieryness <= 7) ? 1.0 : 0.0;
    }
    return static_cast<double>(vitals.hp);
}

IndicatorVector Engine::compute_indicators(const FactualAgent& agent) const {
    IndicatorVector v;
    v.ai = agent.compute_ai(graph_, config_.scales, agent.received_net());
    const Point here = agent.current_fsf().location;
    const double neighbor_range = config_.neighbor_radius * config_.scales.spatial_unit;
    const double brigade_range = config_.brigade_radius * config_.scales.spatial_unit;

    if (agent.kind() == AgentKind::Fire) {
        int burning_neighbors = 0;
        int brigades_around = 0;
        for (const auto& [peer_id, peer] : agents_) {
            if (!peer.alive() || peer_id == agent.id()) continue;
            const double d = euclidean(here, peer.current_fsf().location);
            if (peer.kind() == AgentKind::Fire) {
                const int f = vitals_.at(peer_id).fieryness;
                if (f >= 1 && f <= 7 && d <= neighbor_range) ++burning_neighbors;
            } else if (d <= brigade_range) {
                ++brigades_around;
            }
        }
        v.pi = compute_pi_fire(burning_neighbors, vitals_.at(agent.id()).fieryness,
                               cycle_ - agent.alive_since(), brigades_around);
    } else {
        int discovered = 0;
        for (const CreationEvent& event : creation_log_) {
            if (event.kind != AgentKind::Fire) continue;
            if (event.cycle <= cycle_ - config_.discovery_window || event.cycle > cycle_)
                continue;
            if (euclidean(here, event.location) <= brigade_range) ++discovered;
        }
        v.pi = compute_pi_brigade(discovered, config_.discovery_window);
    }
    return v;
}

void Engine::emit_action(const FactualAgent& agent, const ActionSpec& action) {
    switch (action.kind) {
        case ActionKind::SendAid:
            for (const auto& [peer_id, cached] : agent.acquaintances().close) {
                enqueue_targeted(AgentMessage::aid(agent.id(), action.magnitude, cycle_),
                                 peer_id);
            }
            break;
        case ActionKind::SendAgression:
            for (const auto& [peer_id, cached] : agent.acquaintances().opposite) {
                enqueue_targeted(AgentMessage::agression(agent.id(), -action.magnitude, cycle_),
                                 peer_id);
            }
            break;
        case ActionKind::EmitNotification:
            enqueue_broadcast(AgentMessage::fsf_message(agent.id(), agent.current_fsf(), cycle_));
            break;
    }
}

CycleMetrics Engine::run_cycle(const std::vector<Fsf>& incoming) {
    // Phase 1: ingest facts in input order.
    for (const Fsf& fsf : incoming) ingest(fsf);

    // Phase 2: deliver the bus into inboxes.
    std::vector<Envelope> bus;
    bus.swap(bus_);
    for (Envelope& env : bus) {
        if (env.recipient) {
            auto it = agents_.find(*env.recipient);
            if (it != agents_.end() && it->second.alive()) {
                it->second.inbox().push_back(std::move(env.msg));
                ++stats_.targeted_delivered;
            } else {
                ++stats_.targeted_dropped;
            }
        } else {
            for (auto& [peer_id, peer] : agents_) {
                if (!peer.alive() || peer_id == env.msg.sender) continue;
                peer.inbox().push_back(env.msg);
                ++stats_.broadcast_deliveries;
            }
        }
    }

    // Phase 3: per-agent update in ascending id order.
    int state_changes = 0;
    int variations = 0;
    for (auto& [id, agent] : agents_) {
        if (!agent.alive()) continue;
        agent.begin_cycle();

        std::vector<AgentMessage> inbox;
        inbox.swap(agent.inbox());
        for (const AgentMessage& msg : inbox) {
            if (msg.kind == MessageKind::Fsf) {
                auto sender = agents_.find(msg.sender);
                if (sender == agents_.end() || !sender->second.alive()) {
                    ++stats_.stale_fsf_ignored;
                    continue;
                }
            }
            agent.handle_message(msg, graph_, config_.scales);
        }

        const IndicatorVector v = compute_indicators(agent);
        const bool first = agent.indicator_history().empty();
        const IndicatorVector previous = first ? IndicatorVector{} : agent.indicators();
        const bool varied = first || std::abs(v.ai - previous.ai) > kIndicatorTolerance ||
                            std::abs(v.pi - previous.pi) > kIndicatorTolerance;
        agent.record_indicators(v);
        if (varied) ++variations;

        const GuardInput input{v, vitality_of(agent), cycle_};
        const Atn& atn = agent.kind() == AgentKind::Fire ? fire_atn_ : brigade_atn_;
        const StepResult result = atn.step(agent.atn_state(), input);
        if (result.state != agent.atn_state()) {
            agent.set_atn_state(result.state);
            ++state_changes;
        }
        for (const ActionSpec& action : result.actions) emit_action(agent, action);
    }

    // Phase 4: retire agents that reached End and scrub them from the
    // alive agents' acquaintance views.
    std::vector<AgentId> retired;
    for (auto& [id, agent] : agents_) {
        if (agent.alive() && agent.atn_state() == kEndState) {
            agent.retire();
            retired.push_back(id);
        }
    }
    for (AgentId gone : retired) {
        identity_index_.erase(agents_.at(gone).identity());
        for (auto& [id, agent] : agents_) {
            if (agent.alive()) agent.forget_peer(gone);
        }
    }

    // Phase 5: metrics.
    CycleMetrics m;
    m.cycle = cycle_;
    m.state_changes = state_changes;
    m.indicator_variations = variations;
    m.messages_sent = messages_accum_;
    m.activity = m.state_changes + m.indicator_variations + m.messages_sent;
    for (const auto& [id, agent] : agents_) {
        if (!agent.alive()) continue;
        ++m.alive_agents;
        if (agent.kind() == AgentKind::Fire) ++m.perceived_fires;
    }
    messages_accum_ = 0;
    metrics_.push_back(m);
    ++cycle_;
    return m;
}

bool SnapshotAgent::operator==(const SnapshotAgent& other) const {
    return id == other.id && identity == other.identity && kind == other.kind &&
           state == other.state && alive == other.alive &&
           indicators.ai == other.indicators.ai && indicators.pi == other.indicators.pi &&
           fsf == other.fsf && close == other.close && opposite == other.opposite;
}

bool Snapshot::operator==(const Snapshot& other) const {
    return cycle == other.cycle && agents == other.agents;
}

Snapshot Engine::snapshot() const {
    Snapshot snap;
    snap.cycle = cycle_ - 1;
    for (const auto& [id, agent] : agents_) {
        SnapshotAgent record;
        record.id = id;
        record.identity = agent.identity();
        record.kind = agent.kind();
        record.state = agent.atn_state();
        record.alive = agent.alive();
        record.indicators = agent.indicators();
        record.fsf = agent.current_fsf();
        for (const auto& [peer, value] : agent.acquaintances().close) {
            record.close.push_back(peer);
        }
        for (const auto& [peer, value] : agent.acquaintances().opposite) {
            record.opposite.push_back(peer);
        }
        snap.agents.push_back(std::move(record));
    }
    return snap;
}

std::string Snapshot::serialize() const {
    std::ostringstream out;
    out << "snapshot-v1\n";
    out << "cycle " << cycle << '\n';
    for (const SnapshotAgent& agent : agents) {
        out << "agent " << agent.id << '\n';
        out << "identity " << agent.identity << '\n';
        out << "kind " << to_string(agent.kind) << '\n';
        out << "state " << agent.state << '\n';
        out << "alive " << (agent.alive ? 1 : 0) << '\n';
        out << "ai " << format_double(agent.indicators.ai) << '\n';
        out << "pi " << format_double(agent.indicators.pi) << '\n';
        out << serialize_fsf(agent.fsf) << '\n';
        out << "close";
        for (AgentId id : agent.close) out << ' ' << id;
        out << '\n';
        out << "opposite";
        for (AgentId id : agent.opposite) out << ' ' << id;
        out << '\n';
        out << "end\n";
    }
    return out.str();
}

namespace {

std::vector<AgentId> parse_id_list(std::istringstream& line) {
    std::vector<AgentId> ids;
    std::uint64_t id = 0;
    while (line >> id) ids.push_back(id);
    return ids;
}

}  // namespace

Snapshot parse_snapshot(std::istream& in) {
    Snapshot snap;
    std::string raw;
    int line_no = 0;
    bool saw_header = false;
    bool saw_cycle = false;
    std::optional<SnapshotAgent> current;

    auto require_agent = [&](const char* what) -> SnapshotAgent& {
        if (!current) throw ParseError(line_no, std::string(what) + " outside an agent block");
        return *current;
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream line(raw);
        std::string word;
        if (!(line >> word) || word.front() == '#') continue;
        if (!saw_header) {
            if (word != "snapshot-v1") {
                throw ParseError(line_no, "expected header 'snapshot-v1', got '" + word + "'");
            }
            saw_header = true;
            continue;
        }
        if (word == "cycle") {
            if (!(line >> snap.cycle)) throw ParseError(line_no, "malformed cycle line");
            saw_cycle = true;
        } else if (word == "agent") {
            if (current) throw ParseError(line_no, "agent block not closed with 'end'");
            current = SnapshotAgent{};
            if (!(line >> current->id)) throw ParseError(line_no, "malformed agent id");
        } else if (word == "identity") {
            if (!(line >> require_agent("identity").identity)) {
                throw ParseError(line_no, "malformed identity line");
            }
        } else if (word == "kind") {
            std::string kind_name;
            if (!(line >> kind_name)) throw ParseError(line_no, "malformed kind line");
            if (kind_name == "fire") {
                require_agent("kind").kind = AgentKind::Fire;
            } else if (kind_name == "fireBrigade") {
                require_agent("kind").kind = AgentKind::Brigade;
            } else {
                throw ParseError(line_no, "unknown agent kind '" + kind_name + "'");
            }
        } else if (word == "state") {
            if (!(line >> require_agent("state").state)) {
                throw ParseError(line_no, "malformed state line");
            }
        } else if (word == "alive") {
            int flag = 0;
            if (!(line >> flag) || (flag != 0 && flag != 1)) {
                throw ParseError(line_no, "alive flag must be 0 or 1");
            }
            require_agent("alive").alive = flag == 1;
        } else if (word == "ai") {
            if (!(line >> require_agent("ai").indicators.ai)) {
                throw ParseError(line_no, "malformed ai line");
            }
        } else if (word == "pi") {
            if (!(line >> require_agent("pi").indicators.pi)) {
                throw ParseError(line_no, "malformed pi line");
            }
        } else if (word == "fsf") {
            require_agent("fsf").fsf = parse_fsf(raw, line_no);
        } else if (word == "close") {
            require_agent("close").close = parse_id_list(line);
        } else if (word == "opposite") {
            require_agent("opposite").opposite = parse_id_list(line);
        } else if (word == "end") {
            snap.agents.push_back(std::move(require_agent("end")));
            current.reset();
        } else {
            throw ParseError(line_no, "unknown directive '" + word + "'");
        }
    }
    if (!saw_header) throw ParseError(0, "empty document, expected 'snapshot-v1' header");
    if (!saw_cycle) throw ParseError(0, "snapshot lacks a cycle line");
    if (current) throw ParseError(line_no, "unterminated agent block");
    return snap;
}

Snapshot parse_snapshot_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_snapshot(in);
}

}  // namespace sitrep
