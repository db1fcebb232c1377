#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sitrep/fsf.hpp"

namespace sitrep {

struct ScriptedIgnition {
    Cycle cycle = 0;
    int x = 0;
    int y = 0;
};

/// Configuration for the built-in fire/fire-brigade world. Parsed from
/// `scenario-v1` documents; see External Interfaces in the README.
struct ScenarioConfig {
    int width = 12;
    int height = 12;
    std::uint64_t seed = 0;
    Cycle total_cycles = 100;
    double spread_probability = 0.3;  // per burning neighbor per cycle
    int growth_period = 3;            // cycles between fieryness increments
    int extinguish_power = 2;
    int brigade_hp = 10;
    int hp_loss = 1;
    int hp_loss_fieryness = 5;  // adjacency to fire at least this hot hurts
    double cell_size = 10.0;    // world units per grid cell
    std::vector<std::pair<int, int>> ignitions;
    std::vector<std::pair<int, int>> brigades;
    std::vector<ScriptedIgnition> events;
    std::vector<std::pair<std::string, std::string>> engine_overrides;  // `set` lines

    void validate() const;  // throws std::invalid_argument naming the field
};

ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig parse_scenario_config_text(std::string_view text);
ScenarioConfig load_scenario_config_file(const std::string& path);

/// Text of the fire scenario bundled with the repo (also shipped as
/// data/fire-scenario.cfg): fires spread from two ignition points, six
/// brigades put them out, and a scripted ignition at cycle 63 rekindles
/// the quiet period.
std::string_view default_fire_scenario_text() noexcept;

/// Minimal fire-spread world standing in for an external feed. Fires
/// grow on a deterministic clock and spread to 4-neighbors with a
/// per-neighbor probability; brigades walk greedily to the nearest fire
/// and knock its fieryness down when adjacent. Evolution is a pure
/// function of (config, seed).
class World {
public:
    explicit World(ScenarioConfig config);

    /// Advances one cycle and returns the facts observed during it (one
    /// per fire cell whose fieryness changed, one per brigade whose
    /// observable state changed). Throws std::logic_error when stepping
    /// past the configured run length.
    std::vector<Fsf> step();

    Cycle cycle() const noexcept { return cycle_; }
    bool done() const noexcept { return cycle_ >= config_.total_cycles; }

    int fieryness_at(int x, int y) const;
    int burning_count() const;  // cells with fieryness in 1..7
    int brigade_hp(int unit) const;
    std::pair<int, int> brigade_position(int unit) const;
    int total_brigade_hp() const;

private:
    struct Brigade {
        int x = 0;
        int y = 0;
        int hp = 0;
        std::string action = "idle";
        bool announced = false;  // first observation not yet emitted
        int last_x = -1, last_y = -1, last_hp = -1;
        std::string last_action;
    };

    int cell_index(int x, int y) const noexcept { return y * config_.width + x; }
    bool in_grid(int x, int y) const noexcept;
    double uniform();  // one draw, stable across platforms
    Point cell_center(int x, int y) const noexcept;
    void ignite(int x, int y);

    ScenarioConfig config_;
    std::vector<int> fieryness_;   // per cell, 0 none, 1..7 burning, 8 burned out
    std::vector<int> burn_clock_;  // cycles burning since (re)ignition
    std::vector<Brigade> brigades_;
    std::mt19937_64 rng_;
    Cycle cycle_ = 0;
};

struct GenerationResult {
    FsfStream stream;
    int peak_burning = 0;
    Cycle last_fire_cycle = -1;  // last cycle with a burning cell, -1 if none
};

/// Runs the world for the configured number of cycles and collects the
/// emitted facts into a stream document. Deterministic for a fixed
/// config.
GenerationResult generate_scenario(const ScenarioConfig& config);

}  // namespace sitrep
