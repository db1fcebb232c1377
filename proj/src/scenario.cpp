#include "sitrep/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sitrep/ontology.hpp"

namespace sitrep {

namespace {

template <typename T>
T read_field(std::istringstream& line, int line_no, const char* field) {
    T value{};
    if (!(line >> value)) {
        throw ParseError(line_no, std::string("malformed ") + field + " line");
    }
    return value;
}

void reject_trailing(std::istringstream& line, int line_no) {
    std::string extra;
    if (line >> extra) throw ParseError(line_no, "trailing tokens: '" + extra + "'");
}

}  // namespace

void ScenarioConfig::validate() const {
    if (width < 1 || height < 1) throw std::invalid_argument("grid dimensions must be >= 1");
    if (total_cycles < 0) throw std::invalid_argument("cycles must be >= 0");
    if (!(spread_probability >= 0.0 && spread_probability <= 1.0)) {
        throw std::invalid_argument("spread probability must be in [0,1]");
    }
    if (growth_period < 1) throw std::invalid_argument("growth-period must be >= 1");
    if (extinguish_power < 0) throw std::invalid_argument("extinguish power must be >= 0");
    if (brigade_hp < 1) throw std::invalid_argument("brigade-hp must be >= 1");
    if (hp_loss < 0) throw std::invalid_argument("hp-loss must be >= 0");
    if (hp_loss_fieryness < 1 || hp_loss_fieryness > 8) {
        throw std::invalid_argument("hp-loss-fieryness must be in 1..8");
    }
    if (!(cell_size > 0)) throw std::invalid_argument("cell-size must be positive");
    auto check_cell = [&](int x, int y, const char* what) {
        if (x < 0 || x >= width || y < 0 || y >= height) {
            throw std::invalid_argument(std::string(what) + " cell (" + std::to_string(x) +
                                        "," + std::to_string(y) + ") outside the grid");
        }
    };
    for (const auto& [x, y] : ignitions) check_cell(x, y, "ignite");
    for (const auto& [x, y] : brigades) check_cell(x, y, "brigade");
    for (const ScriptedIgnition& event : events) {
        check_cell(event.x, event.y, "event");
        if (event.cycle < 0 || event.cycle >= total_cycles) {
            throw std::invalid_argument("event cycle " + std::to_string(event.cycle) +
                                        " outside the run length");
        }
    }
}

ScenarioConfig parse_scenario_config(std::istream& in) {
    ScenarioConfig config;
    config.ignitions.clear();
    config.brigades.clear();
    std::string raw;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream line(raw);
        std::string word;
        if (!(line >> word) || word.front() == '#') continue;
        if (!saw_header) {
            if (word != "scenario-v1") {
                throw ParseError(line_no, "expected header 'scenario-v1', got '" + word + "'");
            }
            saw_header = true;
            continue;
        }
        if (word == "grid") {
            config.width = read_field<int>(line, line_no, "grid");
            config.height = read_field<int>(line, line_no, "grid");
        } else if (word == "seed") {
            config.seed = read_field<std::uint64_t>(line, line_no, "seed");
        } else if (word == "cycles") {
            config.total_cycles = read_field<Cycle>(line, line_no, "cycles");
        } else if (word == "spread") {
            config.spread_probability = read_field<double>(line, line_no, "spread");
        } else if (word == "growth-period") {
            config.growth_period = read_field<int>(line, line_no, "growth-period");
        } else if (word == "extinguish") {
            config.extinguish_power = read_field<int>(line, line_no, "extinguish");
        } else if (word == "brigade-hp") {
            config.brigade_hp = read_field<int>(line, line_no, "brigade-hp");
        } else if (word == "hp-loss") {
            config.hp_loss = read_field<int>(line, line_no, "hp-loss");
        } else if (word == "hp-loss-fieryness") {
            config.hp_loss_fieryness = read_field<int>(line, line_no, "hp-loss-fieryness");
        } else if (word == "cell-size") {
            config.cell_size = read_field<double>(line, line_no, "cell-size");
        } else if (word == "ignite") {
            const int x = read_field<int>(line, line_no, "ignite");
            const int y = read_field<int>(line, line_no, "ignite");
            config.ignitions.emplace_back(x, y);
        } else if (word == "brigade") {
            const int x = read_field<int>(line, line_no, "brigade");
            const int y = read_field<int>(line, line_no, "brigade");
            config.brigades.emplace_back(x, y);
        } else if (word == "event") {
            ScriptedIgnition event;
            event.cycle = read_field<Cycle>(line, line_no, "event");
            const std::string verb = read_field<std::string>(line, line_no, "event");
            if (verb != "ignite") throw ParseError(line_no, "unknown event '" + verb + "'");
            event.x = read_field<int>(line, line_no, "event");
            event.y = read_field<int>(line, line_no, "event");
            config.events.push_back(event);
        } else if (word == "set") {
            const std::string key = read_field<std::string>(line, line_no, "set");
            const std::string value = read_field<std::string>(line, line_no, "set");
            config.engine_overrides.emplace_back(key, value);
        } else {
            throw ParseError(line_no, "unknown directive '" + word + "'");
        }
        reject_trailing(line, line_no);
    }
    if (!saw_header) throw ParseError(0, "empty document, expected 'scenario-v1' header");
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
    return config;
}

ScenarioConfig parse_scenario_config_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_scenario_config(in);
}

ScenarioConfig load_scenario_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
    return parse_scenario_config(in);
}

std::string_view default_fire_scenario_text() noexcept {
    // Shipped as data/fire-scenario.cfg as well; keep the two in sync.
    static constexpr std::string_view kText = R"(scenario-v1
# Fire outbreak on a 12x12 block grid. Two ignition points, six
# brigades, and a scripted ignition at cycle 63 that rekindles the
# quiet period after the first extinction.
grid 12 12
seed 0
cycles 110
spread 0.3
growth-period 3
extinguish 2
brigade-hp 12
hp-loss 1
hp-loss-fieryness 5
cell-size 10
ignite 5 5
ignite 6 6
brigade 0 0
brigade 11 0
brigade 0 11
brigade 11 11
brigade 5 0
brigade 0 5
event 63 ignite 8 8
# Engine tunables that fit this world's geometry.
set scales.spatial_unit 10
)";
    return kText;
}

World::World(ScenarioConfig config) : config_(std::move(config)), rng_(config_.seed) {
    config_.validate();
    fieryness_.assign(static_cast<std::size_t>(config_.width * config_.height), 0);
    burn_clock_.assign(fieryness_.size(), 0);
    for (const auto& [x, y] : config_.brigades) {
        Brigade brigade;
        brigade.x = x;
        brigade.y = y;
        brigade.hp = config_.brigade_hp;
        brigades_.push_back(brigade);
    }
}

bool World::in_grid(int x, int y) const noexcept {
    return x >= 0 && x < config_.width && y >= 0 && y < config_.height;
}

double World::uniform() {
    // 53-bit mantissa draw; identical on every platform for a fixed seed.
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

Point World::cell_center(int x, int y) const noexcept {
    return Point{(x + 0.5) * config_.cell_size, (y + 0.5) * config_.cell_size};
}

void World::ignite(int x, int y) {
    const int index = cell_index(x, y);
    if (fieryness_[index] >= 1 && fieryness_[index] <= 7) return;  // already burning
    fieryness_[index] = 1;
    burn_clock_[index] = 0;
}

std::vector<Fsf> World::step() {
    if (done()) throw std::logic_error("stepping past the configured run length");
    const std::vector<int> before = fieryness_;

    // Scripted ignitions; the initial sites are cycle-0 events.
    if (cycle_ == 0) {
        for (const auto& [x, y] : config_.ignitions) ignite(x, y);
    }
    for (const ScriptedIgnition& event : config_.events) {
        if (event.cycle == cycle_) ignite(event.x, event.y);
    }

    // Fire growth on the burn clock.
    for (std::size_t i = 0; i < fieryness_.size(); ++i) {
        if (fieryness_[i] < 1 || fieryness_[i] > 7) continue;
        ++burn_clock_[i];
        if (burn_clock_[i] % config_.growth_period == 0) {
            fieryness_[i] = std::min(fieryness_[i] + 1, 8);
        }
    }

    // Spread to flammable 4-neighbors, one draw per candidate cell.
    std::vector<int> newly_ignited;
    for (int y = 0; y < config_.height; ++y) {
        for (int x = 0; x < config_.width; ++x) {
            const int index = cell_index(x, y);
            if (fieryness_[index] != 0) continue;
            int burning_neighbors = 0;
            const int dx[] = {1, -1, 0, 0};
            const int dy[] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                const int nx = x + dx[k], ny = y + dy[k];
                if (!in_grid(nx, ny)) continue;
                const int f = fieryness_[cell_index(nx, ny)];
                if (f >= 1 && f <= 7) ++burning_neighbors;
            }
            if (burning_neighbors == 0) continue;
            const double p_any =
                1.0 - std::pow(1.0 - config_.spread_probability, burning_neighbors);
            if (uniform() < p_any) newly_ignited.push_back(index);
        }
    }
    for (int index : newly_ignited) {
        fieryness_[index] = 1;
        burn_clock_[index] = 0;
    }

    // Brigades: extinguish when adjacent (8-neighborhood), else walk
    // toward the nearest burning cell.
    for (Brigade& brigade : brigades_) {
        if (brigade.hp == 0) {
            brigade.action = "down";
            continue;
        }
        int best_adjacent = -1;
        for (int yy = brigade.y - 1; yy <= brigade.y + 1; ++yy) {
            for (int xx = brigade.x - 1; xx <= brigade.x + 1; ++xx) {
                if (!in_grid(xx, yy)) continue;
                const int index = cell_index(xx, yy);
                if (fieryness_[index] < 1 || fieryness_[index] > 7) continue;
                if (best_adjacent == -1 || fieryness_[index] > fieryness_[best_adjacent] ||
                    (fieryness_[index] == fieryness_[best_adjacent] && index < best_adjacent)) {
                    best_adjacent = index;
                }
            }
        }
        if (best_adjacent != -1) {
            fieryness_[best_adjacent] =
                std::max(0, fieryness_[best_adjacent] - config_.extinguish_power);
            brigade.action = "extinguish";
            continue;
        }
        // Nearest burning cell, euclidean on cell coordinates, lowest
        // index on ties.
        int target = -1;
        double best_distance = std::numeric_limits<double>::infinity();
        for (int y = 0; y < config_.height; ++y) {
            for (int x = 0; x < config_.width; ++x) {
                const int index = cell_index(x, y);
                if (fieryness_[index] < 1 || fieryness_[index] > 7) continue;
                const double d = std::hypot(static_cast<double>(x - brigade.x),
                                            static_cast<double>(y - brigade.y));
                if (d < best_distance) {
                    best_distance = d;
                    target = index;
                }
            }
        }
        if (target == -1) {
            brigade.action = "idle";
            continue;
        }
        const int tx = target % config_.width;
        const int ty = target / config_.width;
        const int delta_x = tx - brigade.x;
        const int delta_y = ty - brigade.y;
        if (std::abs(delta_x) >= std::abs(delta_y) && delta_x != 0) {
            brigade.x += delta_x > 0 ? 1 : -1;
        } else if (delta_y != 0) {
            brigade.y += delta_y > 0 ? 1 : -1;
        }
        brigade.action = "move";
    }

    // Heat damage near hot fires.
    for (Brigade& brigade : brigades_) {
        if (brigade.hp == 0) continue;
        bool exposed = false;
        for (int yy = brigade.y - 1; yy <= brigade.y + 1 && !exposed; ++yy) {
            for (int xx = brigade.x - 1; xx <= brigade.x + 1 && !exposed; ++xx) {
                if (!in_grid(xx, yy)) continue;
                const int f = fieryness_[cell_index(xx, yy)];
                if (f >= config_.hp_loss_fieryness && f <= 7) exposed = true;
            }
        }
        if (exposed) brigade.hp = std::max(0, brigade.hp - config_.hp_loss);
    }

    // Observations: fire cells whose fieryness changed, brigades whose
    // observable state changed.
    std::vector<Fsf> facts;
    for (std::size_t i = 0; i < fieryness_.size(); ++i) {
        if (fieryness_[i] == before[i]) continue;
        const int x = static_cast<int>(i) % config_.width;
        const int y = static_cast<int>(i) / config_.width;
        Fsf fsf;
        fsf.key = "fire";
        fsf.timestamp = cycle_;
        fsf.location = cell_center(x, y);
        fsf.qualifiers.emplace_back("fieryness", std::to_string(fieryness_[i]));
        fsf.qualifiers.emplace_back("site", "building#" + std::to_string(i));
        facts.push_back(std::move(fsf));
    }
    for (std::size_t unit = 0; unit < brigades_.size(); ++unit) {
        Brigade& brigade = brigades_[unit];
        const bool changed = !brigade.announced || brigade.x != brigade.last_x ||
                             brigade.y != brigade.last_y || brigade.hp != brigade.last_hp ||
                             brigade.action != brigade.last_action;
        if (!changed) continue;
        brigade.announced = true;
        brigade.last_x = brigade.x;
        brigade.last_y = brigade.y;
        brigade.last_hp = brigade.hp;
        brigade.last_action = brigade.action;
        Fsf fsf;
        fsf.key = "fireBrigade";
        fsf.timestamp = cycle_;
        fsf.location = cell_center(brigade.x, brigade.y);
        fsf.qualifiers.emplace_back("unit", "brigade#" + std::to_string(unit));
        fsf.qualifiers.emplace_back("action", brigade.action);
        fsf.qualifiers.emplace_back("hp", std::to_string(brigade.hp));
        facts.push_back(std::move(fsf));
    }

    ++cycle_;
    return facts;
}

int World::fieryness_at(int x, int y) const {
    if (!in_grid(x, y)) throw std::out_of_range("cell outside the grid");
    return fieryness_[static_cast<std::size_t>(cell_index(x, y))];
}

int World::burning_count() const {
    int count = 0;
    for (int f : fieryness_) {
        if (f >= 1 && f <= 7) ++count;
    }
    return count;
}

int World::brigade_hp(int unit) const {
    return brigades_.at(static_cast<std::size_t>(unit)).hp;
}

std::pair<int, int> World::brigade_position(int unit) const {
    const Brigade& brigade = brigades_.at(static_cast<std::size_t>(unit));
    return {brigade.x, brigade.y};
}

int World::total_brigade_hp() const {
    int total = 0;
    for (const Brigade& brigade : brigades_) total += brigade.hp;
    return total;
}

GenerationResult generate_scenario(const ScenarioConfig& config) {
    config.validate();
    World world(config);
    GenerationResult result;
    result.stream.cycles.reserve(static_cast<std::size_t>(config.total_cycles));
    while (!world.done()) {
        result.stream.cycles.push_back(world.step());
        const int burning = world.burning_count();
        result.peak_burning = std::max(result.peak_burning, burning);
        if (burning > 0) result.last_fire_cycle = world.cycle() - 1;
    }
    return result;
}

}  // namespace sitrep
