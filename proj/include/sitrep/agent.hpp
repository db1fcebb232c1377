#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sitrep/atn.hpp"
#include "sitrep/fsf.hpp"
#include "sitrep/ontology.hpp"

namespace sitrep {

using AgentId = std::uint64_t;

enum class AgentKind { Fire, Brigade };

std::string_view to_string(AgentKind kind) noexcept;

enum class MessageKind { Fsf, Aid, Agression };

/// Inter-agent message. FSF messages carry the sender's fact; aid and
/// agression messages carry a signed value, positive for aid, negative
/// for agression.
struct AgentMessage {
    MessageKind kind = MessageKind::Fsf;
    AgentId sender = 0;
    Fsf fsf;             // Fsf kind only
    double payload = 0;  // Aid/Agression kinds only
    Cycle cycle = 0;     // cycle the message was sent

    static AgentMessage fsf_message(AgentId sender, Fsf fsf, Cycle cycle);
    static AgentMessage aid(AgentId sender, double value, Cycle cycle);
    static AgentMessage agression(AgentId sender, double value, Cycle cycle);
};

enum class Acquaintance { Close, Opposite, Neutral };

/// Partition of the peers an agent knows about: close (cached proximity
/// > 0) and opposite (< 0). Neutral peers appear in neither map.
struct AcquaintanceNetwork {
    std::map<AgentId, double> close;
    std::map<AgentId, double> opposite;

    Acquaintance classify(AgentId id) const;
    void erase(AgentId id);
};

struct MessageEffect {
    MessageKind kind = MessageKind::Fsf;
    AgentId sender = 0;
    Acquaintance classification = Acquaintance::Neutral;  // Fsf kind
    double received_delta = 0;                            // Aid/Agression kinds
};

/// Plausibility of a fire fact: 10 * exp(-0.05 * Y) with
/// Y = burning_neighbors + fieryness + life_time - nb_fire_brigades.
/// Falls as the fire ages or grows, rises with the brigades around it;
/// values above 10 mean the fire is likely to be solved.
double compute_pi_fire(int burning_neighbors, int fieryness, Cycle life_time,
                       int nb_fire_brigades);

/// Plausibility of a brigade fact: discovery rate over a sliding window,
/// scaled to [0, 10] so it is commensurate with the fire curve.
double compute_pi_brigade(int discovered_new_facts, Cycle window_length);

/// One factual agent: carries one evolving FSF, an ATN state, its
/// indicators and the acquaintances it has sorted into close and
/// opposite. All mutation goes through the engine's serialized phases.
class FactualAgent {
public:
    FactualAgent(AgentId id, AgentKind kind, std::string identity, Fsf fsf, Cycle created);

    AgentId id() const noexcept { return id_; }
    AgentKind kind() const noexcept { return kind_; }
    const std::string& identity() const noexcept { return identity_; }
    const Fsf& current_fsf() const noexcept { return current_; }
    const std::optional<Fsf>& previous_fsf() const noexcept { return previous_; }
    int atn_state() const noexcept { return atn_state_; }
    void set_atn_state(int state) noexcept { atn_state_ = state; }
    bool alive() const noexcept { return alive_; }
    void retire() noexcept { alive_ = false; }
    Cycle alive_since() const noexcept { return alive_since_; }
    const IndicatorVector& indicators() const noexcept { return indicators_; }
    const std::vector<IndicatorVector>& indicator_history() const noexcept { return history_; }
    const AcquaintanceNetwork& acquaintances() const noexcept { return acquaintances_; }
    std::vector<AgentMessage>& inbox() noexcept { return inbox_; }

    /// Rotates previous <- current <- fsf and returns the broadcast
    /// FSFMessage announcing the change. The new fact must describe the
    /// same object (same key) and must not move backwards in time.
    AgentMessage update_fsf(const Fsf& fsf);

    /// AI: proximity between the agent's previous and current facts (1
    /// for a newborn fact with no history), shifted by the aid/agression
    /// sum received this cycle, clamped to [-1, 1].
    double compute_ai(const OntologyGraph& graph, const ProximityScales& scales,
                      double received_net) const;

    /// Recomputes the cached proximity to `other` and refiles it:
    /// close if > 0, opposite if < 0, dropped from both if exactly 0.
    Acquaintance update_acquaintances(AgentId other, const Fsf& other_fsf,
                                      const OntologyGraph& graph,
                                      const ProximityScales& scales);

    /// Applies one delivered message. FSF messages refresh the sender's
    /// acquaintance entry (and the known-peer registry), aid/agression
    /// accumulate into this cycle's received net. Throws on a payload
    /// with the wrong sign.
    MessageEffect handle_message(const AgentMessage& msg, const OntologyGraph& graph,
                                 const ProximityScales& scales);

    /// Clears the per-cycle aid/agression accumulator.
    void begin_cycle() noexcept { received_net_ = 0.0; }
    double received_net() const noexcept { return received_net_; }

    void record_indicators(const IndicatorVector& v);

    /// Latest FSF seen from each known peer; used to refresh this
    /// agent's own cached proximities when its own fact changes.
    const std::map<AgentId, Fsf>& known_peers() const noexcept { return known_peers_; }
    void learn_peer(AgentId id, const Fsf& fsf) { known_peers_[id] = fsf; }
    void forget_peer(AgentId id);

    /// Recomputes every cached acquaintance entry against the known-peer
    /// registry; called after this agent's own FSF changed.
    void refresh_acquaintances(const OntologyGraph& graph, const ProximityScales& scales);

private:
    AgentId id_;
    AgentKind kind_;
    std::string identity_;
    Fsf current_;
    std::optional<Fsf> previous_;
    int atn_state_ = 1;
    bool alive_ = true;
    Cycle alive_since_ = 0;
    IndicatorVector indicators_;
    std::vector<IndicatorVector> history_;
    AcquaintanceNetwork acquaintances_;
    std::vector<AgentMessage> inbox_;
    std::map<AgentId, Fsf> known_peers_;
    double received_net_ = 0.0;
};

}  // namespace sitrep
