#include "sitrep/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sitrep {

std::string_view to_string(AgentKind kind) noexcept {
    return kind == AgentKind::Fire ? "fire" : "fireBrigade";
}

AgentMessage AgentMessage::fsf_message(AgentId sender, Fsf fsf, Cycle cycle) {
    return AgentMessage{MessageKind::Fsf, sender, std::move(fsf), 0.0, cycle};
}

AgentMessage AgentMessage::aid(AgentId sender, double value, Cycle cycle) {
    if (!(value > 0)) throw std::invalid_argument("aid payload must be positive");
    return AgentMessage{MessageKind::Aid, sender, {}, value, cycle};
}

AgentMessage AgentMessage::agression(AgentId sender, double value, Cycle cycle) {
    if (!(value < 0)) throw std::invalid_argument("agression payload must be negative");
    return AgentMessage{MessageKind::Agression, sender, {}, value, cycle};
}

Acquaintance AcquaintanceNetwork::classify(AgentId id) const {
    if (close.count(id)) return Acquaintance::Close;
    if (opposite.count(id)) return Acquaintance::Opposite;
    return Acquaintance::Neutral;
}

void AcquaintanceNetwork::erase(AgentId id) {
    close.erase(id);
    opposite.erase(id);
}

double compute_pi_fire(int burning_neighbors, int fieryness, Cycle life_time,
                       int nb_fire_brigades) {
    if (burning_neighbors < 0 || life_time < 0 || nb_fire_brigades < 0) {
        throw std::invalid_argument("pi inputs must be non-negative");
    }
    if (fieryness < 0 || fieryness > 8) {
        throw std::out_of_range("fieryness must be in 0..8");
    }
    const double y = static_cast<double>(burning_neighbors + fieryness) +
                     static_cast<double>(life_time) - static_cast<double>(nb_fire_brigades);
    return 10.0 * std::exp(-0.05 * y);
}

double compute_pi_brigade(int discovered_new_facts, Cycle window_length) {
    if (window_length < 1) throw std::invalid_argument("window length must be >= 1");
    if (discovered_new_facts < 0) throw std::invalid_argument("discovery count must be >= 0");
    const double rate = 10.0 * static_cast<double>(discovered_new_facts) /
                        static_cast<double>(window_length);
    return std::clamp(rate, 0.0, 10.0);
}

FactualAgent::FactualAgent(AgentId id, AgentKind kind, std::string identity, Fsf fsf,
                           Cycle created)
    : id_(id),
      kind_(kind),
      identity_(std::move(identity)),
      current_(std::move(fsf)),
      alive_since_(created) {}

AgentMessage FactualAgent::update_fsf(const Fsf& fsf) {
    if (fsf.key != current_.key) {
        throw std::invalid_argument("update_fsf: key mismatch ('" + fsf.key + "' vs '" +
                                    current_.key + "')");
    }
    if (fsf.timestamp < current_.timestamp) {
        throw std::invalid_argument("update_fsf: timestamp moved backwards");
    }
    previous_ = std::move(current_);
    current_ = fsf;
    return AgentMessage::fsf_message(id_, current_, fsf.timestamp);
}

double FactualAgent::compute_ai(const OntologyGraph& graph, const ProximityScales& scales,
                                double received_net) const {
    const double base = previous_ ? proximity(*previous_, current_, graph, scales) : 1.0;
    return std::clamp(base + received_net, -1.0, 1.0);
}

Acquaintance FactualAgent::update_acquaintances(AgentId other, const Fsf& other_fsf,
                                                const OntologyGraph& graph,
                                                const ProximityScales& scales) {
    const double p = proximity(current_, other_fsf, graph, scales);
    acquaintances_.erase(other);
    if (p > 0) {
        acquaintances_.close.emplace(other, p);
        return Acquaintance::Close;
    }
    if (p < 0) {
        acquaintances_.opposite.emplace(other, p);
        return Acquaintance::Opposite;
    }
    return Acquaintance::Neutral;
}

MessageEffect FactualAgent::handle_message(const AgentMessage& msg, const OntologyGraph& graph,
                                           const ProximityScales& scales) {
    MessageEffect effect;
    effect.kind = msg.kind;
    effect.sender = msg.sender;
    switch (msg.kind) {
        case MessageKind::Fsf:
            learn_peer(msg.sender, msg.fsf);
            effect.classification = update_acquaintances(msg.sender, msg.fsf, graph, scales);
            break;
        case MessageKind::Aid:
            if (!(msg.payload > 0)) {
                throw std::invalid_argument("aid message with non-positive payload");
            }
            received_net_ += msg.payload;
            effect.received_delta = msg.payload;
            break;
        case MessageKind::Agression:
            if (!(msg.payload < 0)) {
                throw std::invalid_argument("agression message with non-negative payload");
            }
            received_net_ += msg.payload;
            effect.received_delta = msg.payload;
            break;
    }
    return effect;
}

void FactualAgent::record_indicators(const IndicatorVector& v) {
    indicators_ = v;
    history_.push_back(v);
}

void FactualAgent::forget_peer(AgentId id) {
    known_peers_.erase(id);
    acquaintances_.erase(id);
}

void FactualAgent::refresh_acquaintances(const OntologyGraph& graph,
                                         const ProximityScales& scales) {
    for (const auto& [peer, fsf] : known_peers_) {
        update_acquaintances(peer, fsf, graph, scales);
    }
}

}  // namespace sitrep
