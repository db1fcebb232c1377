#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sitrep/agent.hpp"
#include "sitrep/atn.hpp"
#include "sitrep/fsf.hpp"
#include "sitrep/ontology.hpp"

namespace sitrep {

/// All engine tunables in one place. Radii are in grid cells, i.e.
/// multiples of scales.spatial_unit, matching the generator's layout.
struct EngineConfig {
    ProximityScales scales;
    ThresholdConfig fire_thresholds;
    ThresholdConfig brigade_thresholds = default_brigade_thresholds();
    double neighbor_radius = 1.0;  // burning-neighbor search, cells
    double brigade_radius = 3.0;   // brigades-around + discovery search, cells
    Cycle lateness_window = 5;
    Cycle discovery_window = 10;
    int default_fieryness = 1;    // fire fact created without a fieryness qualifier
    int default_brigade_hp = 10;  // brigade fact created without an hp qualifier
    std::string fire_identity = "site";
    std::string brigade_identity = "unit";
    std::uint64_t seed = 0;

    void validate() const;
};

/// Applies one `key=value` style override (key and value passed
/// separately). Throws std::invalid_argument on unknown keys or
/// unparseable values. See README for the key list.
void apply_override(EngineConfig& config, const std::string& key, const std::string& value);

struct CycleMetrics {
    Cycle cycle = 0;
    int state_changes = 0;
    int indicator_variations = 0;  // agents whose vector moved beyond 1e-9
    int messages_sent = 0;         // send events; a broadcast counts once
    int activity = 0;              // sum of the three above
    int perceived_fires = 0;       // alive fire agents after retirement
    int alive_agents = 0;

    bool operator==(const CycleMetrics&) const = default;
};

inline constexpr std::string_view kMetricsCsvHeader =
    "cycle,stateChanges,indicatorVariations,messagesSent,activity,perceivedFires,aliveAgents";

std::string to_csv_row(const CycleMetrics& m);
std::string metrics_to_csv(const std::vector<CycleMetrics>& series);

struct SnapshotAgent {
    AgentId id = 0;
    std::string identity;
    AgentKind kind = AgentKind::Fire;
    int state = 1;
    bool alive = true;
    IndicatorVector indicators;
    Fsf fsf;
    std::vector<AgentId> close;
    std::vector<AgentId> opposite;

    bool operator==(const SnapshotAgent& other) const;
};

/// Read-only view of the whole representation at a cycle boundary.
/// `cycle` is the index of the last completed cycle, -1 when none ran.
struct Snapshot {
    Cycle cycle = -1;
    std::vector<SnapshotAgent> agents;  // ascending id, dead ones flagged

    std::string serialize() const;
    bool operator==(const Snapshot& other) const;
};

Snapshot parse_snapshot(std::istream& in);
Snapshot parse_snapshot_text(std::string_view text);

/// Cumulative message accounting, exposed for conservation checks.
struct MessageStats {
    std::int64_t send_events = 0;
    std::int64_t targeted_sent = 0;
    std::int64_t targeted_delivered = 0;
    std::int64_t targeted_dropped = 0;  // recipient retired before delivery
    std::int64_t broadcast_sent = 0;
    std::int64_t broadcast_deliveries = 0;
    std::int64_t stale_fsf_ignored = 0;  // FSF delivered after its sender retired
};

enum class RoutingOutcome { Created, Updated };

/// Discrete-cycle scheduler for the factual-agent organisation.
///
/// run_cycle executes five strictly ordered phases: ingest incoming
/// facts (create or update agents, FSF broadcasts go on the bus),
/// deliver the bus into inboxes, update every alive agent in ascending
/// id order (inbox, indicators, ATN step, emitted actions back onto the
/// bus), retire agents that reached the End state, then append the
/// cycle's metrics. FSF broadcasts enqueued during ingest are delivered
/// within the same cycle; messages emitted by agent actions ride the
/// bus into the next cycle. Everything is deterministic for a fixed
/// (config, input stream).
class Engine {
public:
    Engine(OntologyGraph graph, EngineConfig config);

    /// Routes one fact: update the alive agent with the same key and
    /// identity qualifier value, or create a new agent. Normally called
    /// by run_cycle; facts ingested between cycles are attributed to
    /// the next run_cycle's metrics.
    RoutingOutcome ingest(const Fsf& fsf);

    CycleMetrics run_cycle(const std::vector<Fsf>& incoming);

    Snapshot snapshot() const;

    const std::vector<CycleMetrics>& activity_series() const noexcept { return metrics_; }

    /// Index of the next cycle to run (0 on a fresh engine).
    Cycle cycle() const noexcept { return cycle_; }

    const OntologyGraph& graph() const noexcept { return graph_; }
    const EngineConfig& config() const noexcept { return config_; }
    const std::map<AgentId, FactualAgent>& agents() const noexcept { return agents_; }
    const MessageStats& message_stats() const noexcept { return stats_; }
    std::size_t pending_messages() const noexcept { return bus_.size(); }

private:
    struct Envelope {
        AgentMessage msg;
        std::optional<AgentId> recipient;  // nullopt = broadcast
    };
    struct Vitals {
        int fieryness = 0;  // fire kind
        int hp = 0;         // brigade kind
    };
    struct CreationEvent {
        Cycle cycle;
        Point location;
        AgentKind kind;
    };

    void enqueue_broadcast(AgentMessage msg);
    void enqueue_targeted(AgentMessage msg, AgentId recipient);
    Vitals parse_vitals(const Fsf& fsf, AgentKind kind, const Vitals* previous) const;
    double vitality_of(const FactualAgent& agent) const;
    IndicatorVector compute_indicators(const FactualAgent& agent) const;
    void emit_action(const FactualAgent& agent, const ActionSpec& action);

    OntologyGraph graph_;
    EngineConfig config_;
    Atn fire_atn_;
    Atn brigade_atn_;
    std::map<AgentId, FactualAgent> agents_;
    std::map<std::string, AgentId> identity_index_;  // alive agents only
    std::map<AgentId, Vitals> vitals_;
    std::vector<Envelope> bus_;
    std::vector<CreationEvent> creation_log_;
    std::vector<CycleMetrics> metrics_;
    MessageStats stats_;
    Cycle cycle_ = 0;
    AgentId next_id_ = 1;
    int messages_accum_ = 0;  // send events since the last metrics row
};

}  // namespace sitrep
