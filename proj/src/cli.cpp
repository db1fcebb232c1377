#include "sitrep/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sitrep/engine.hpp"
#include "sitrep/ontology.hpp"
#include "sitrep/scenario.hpp"

namespace sitrep::cli {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string first_directive(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string raw;
    while (std::getline(in, raw)) {
        std::istringstream line(raw);
        std::string word;
        if (line >> word && word.front() != '#') return word;
    }
    return {};
}

int classify_failure(const std::exception&) { return kRuntimeError; }

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return classify_failure(e);
    }
}

}  // namespace

SnapshotSelection SnapshotSelection::parse(const std::vector<std::string>& specs) {
    SnapshotSelection selection;
    for (const std::string& spec : specs) {
        if (spec == "all") {
            selection.all = true;
        } else if (spec == "none") {
            selection.all = false;
            selection.cycles.clear();
        } else {
            Cycle cycle = 0;
            auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), cycle);
            if (ec != std::errc{} || ptr != spec.data() + spec.size() || cycle < 0) {
                throw std::invalid_argument("bad --snapshot value '" + spec +
                                            "' (expected a cycle, 'all' or 'none')");
            }
            selection.cycles.push_back(cycle);
        }
    }
    return selection;
}

bool SnapshotSelection::wants(Cycle cycle) const {
    if (all) return true;
    for (Cycle c : cycles) {
        if (c == cycle) return true;
    }
    return false;
}

std::pair<std::string, std::string> parse_override_flag(const std::string& flag) {
    auto eq = flag.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("bad --set value '" + flag + "' (expected key=value)");
    }
    return {flag.substr(0, eq), flag.substr(eq + 1)};
}

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ScenarioConfig config = load_scenario_config_file(options.scenario_path);
        if (options.seed) config.seed = *options.seed;
        const GenerationResult result = generate_scenario(config);
        write_file(options.out_path, result.stream.serialize());
        out << "generated " << result.stream.cycles.size() << " cycles, peak fires "
            << result.peak_burning << ", written to " << options.out_path << '\n';
        return kOk;
    });
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (options.stream_path.empty() == options.scenario_path.empty()) {
            throw std::invalid_argument("need exactly one of --stream or --scenario");
        }
        const OntologyGraph graph = load_ontology_file(options.ontology_path);

        EngineConfig config;
        FsfStream stream;
        if (!options.scenario_path.empty()) {
            ScenarioConfig scenario = load_scenario_config_file(options.scenario_path);
            if (options.seed) scenario.seed = *options.seed;
            for (const auto& [key, value] : scenario.engine_overrides) {
                apply_override(config, key, value);
            }
            config.seed = scenario.seed;
            stream = generate_scenario(scenario).stream;
        } else {
            stream = load_fsf_stream_file(options.stream_path);
        }
        for (const auto& [key, value] : options.overrides) apply_override(config, key, value);
        if (options.seed) config.seed = *options.seed;
        config.validate();

        const SnapshotSelection snapshots = SnapshotSelection::parse(options.snapshot_specs);

        const fs::path out_dir(options.out_dir.empty() ? "." : options.out_dir);
        fs::create_directories(out_dir);
        const fs::path metrics_path = out_dir / "metrics.csv";
        const fs::path marker_path = out_dir / "metrics.csv.incomplete";

        Engine engine(graph, config);
        std::ofstream metrics(metrics_path, std::ios::binary);
        if (!metrics) {
            throw std::runtime_error("cannot open '" + metrics_path.string() +
                                     "' for writing");
        }
        metrics << kMetricsCsvHeader << '\n';

        try {
            for (std::size_t k = 0; k < stream.cycles.size(); ++k) {
                const CycleMetrics m = engine.run_cycle(stream.cycles[k]);
                metrics << to_csv_row(m) << '\n';
                const Cycle completed = static_cast<Cycle>(k);
                if (snapshots.wants(completed)) {
                    const fs::path snap_path =
                        out_dir / ("snapshot-" + std::to_string(completed) + ".txt");
                    write_file(snap_path, engine.snapshot().serialize());
                }
            }
        } catch (...) {
            metrics.flush();
            write_file(marker_path, "run aborted; outputs are partial\n");
            throw;
        }
        metrics.close();
        if (!metrics) throw std::runtime_error("failed writing '" + metrics_path.string() + "'");
        fs::remove(marker_path);

        int peak_fires = 0;
        for (const CycleMetrics& m : engine.activity_series()) {
            peak_fires = std::max(peak_fires, m.perceived_fires);
        }
        out << "ran " << stream.cycles.size() << " cycles, peak fires " << peak_fires
            << ", metrics at " << metrics_path.string() << '\n';
        return kOk;
    });
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string header = first_directive(path);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open '" + path + "'");
        if (header == "ontology-v1") {
            const OntologyGraph graph = load_ontology(in);
            out << "valid ontology: " << graph.concept_count() << " concepts, "
                << graph.edge_count() << " edges\n";
        } else if (header == "fsf-stream-v1") {
            const FsfStream stream = parse_fsf_stream(in);
            std::size_t events = 0;
            for (const auto& batch : stream.cycles) events += batch.size();
            out << "valid stream: " << stream.cycles.size() << " cycles, " << events
                << " events\n";
        } else if (header == "scenario-v1") {
            const ScenarioConfig config = parse_scenario_config(in);
            out << "valid scenario: " << config.width << "x" << config.height << " grid, "
                << config.total_cycles << " cycles\n";
        } else if (header == "snapshot-v1") {
            const Snapshot snapshot = parse_snapshot(in);
            out << "valid snapshot: cycle " << snapshot.cycle << ", " << snapshot.agents.size()
                << " agents\n";
        } else {
            throw std::invalid_argument("unrecognized document type" +
                                        (header.empty() ? std::string()
                                                        : " (first directive '" + header + "')"));
        }
        return kOk;
    });
}

int cmd_inspect(const std::string& path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open '" + path + "'");
        const Snapshot snapshot = parse_snapshot(in);
        out << "snapshot of cycle " << snapshot.cycle << " (" << snapshot.agents.size()
            << " agents)\n";
        for (const SnapshotAgent& agent : snapshot.agents) {
            out << "  #" << agent.id << ' ' << agent.identity << ' '
                << (agent.alive ? "alive" : "dead") << " state=" << agent.state
                << " ai=" << format_double(agent.indicators.ai)
                << " pi=" << format_double(agent.indicators.pi) << " close=" << agent.close.size()
                << " opposite=" << agent.opposite.size() << '\n';
            out << "    " << serialize_fsf(agent.fsf) << '\n';
        }
        return kOk;
    });
}

}  // namespace sitrep::cli
