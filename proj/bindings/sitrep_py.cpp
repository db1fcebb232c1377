#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sitrep/agent.hpp"
#include "sitrep/atn.hpp"
#include "sitrep/engine.hpp"
#include "sitrep/fsf.hpp"
#include "sitrep/ontology.hpp"
#include "sitrep/scenario.hpp"

namespace py = pybind11;
using namespace sitrep;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Factual-agent situation representation engine";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::enum_<TaxonomyClass>(m, "TaxonomyClass")
        .value("Element", TaxonomyClass::Element)
        .value("Person", TaxonomyClass::Person)
        .value("Group", TaxonomyClass::Group)
        .value("Phenomenon", TaxonomyClass::Phenomenon)
        .value("Action", TaxonomyClass::Action)
        .value("Message", TaxonomyClass::Message);

    py::enum_<TaxonomyFamily>(m, "TaxonomyFamily")
        .value("Concrete", TaxonomyFamily::Concrete)
        .value("Virtual", TaxonomyFamily::Virtual);
    m.def("family_of", &family_of);

    py::class_<OntologyGraph>(m, "OntologyGraph")
        .def("has_concept", &OntologyGraph::has_concept)
        .def("concept_ids", &OntologyGraph::concept_ids)
        .def("concept_count", &OntologyGraph::concept_count)
        .def("edge_count", &OntologyGraph::edge_count)
        .def("semantic_proximity", &OntologyGraph::semantic_proximity)
        .def("classify", &OntologyGraph::classify)
        .def("serialize", &OntologyGraph::serialize);
    m.def("load_ontology", &load_ontology_text, py::arg("text"),
          "Parse an ontology-v1 document");
    m.def("load_ontology_file", &load_ontology_file, py::arg("path"));
    m.def("default_crisis_ontology", &default_crisis_ontology);
    m.def("default_crisis_ontology_text",
          [] { return std::string(default_crisis_ontology_text()); });

    py::class_<Point>(m, "Point")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &Point::x)
        .def_readwrite("y", &Point::y);

    py::class_<Fsf>(m, "Fsf")
        .def(py::init<>())
        .def_readwrite("key", &Fsf::key)
        .def_readwrite("qualifiers", &Fsf::qualifiers)
        .def_readwrite("timestamp", &Fsf::timestamp)
        .def_readwrite("location", &Fsf::location)
        .def("__eq__", [](const Fsf& a, const Fsf& b) { return a == b; })
        .def("__repr__", [](const Fsf& f) { return serialize_fsf(f); });
    m.def("parse_fsf", &parse_fsf, py::arg("text"), py::arg("line") = 0);
    m.def("serialize_fsf", &serialize_fsf);

    py::class_<ProximityScales>(m, "ProximityScales")
        .def(py::init<>())
        .def(py::init([](double time_decay, double space_decay, double spatial_unit) {
                 return ProximityScales{time_decay, space_decay, spatial_unit};
             }),
             py::arg("time_decay") = 0.2, py::arg("space_decay") = 0.2,
             py::arg("spatial_unit") = 1.0)
        .def_readwrite("time_decay", &ProximityScales::time_decay)
        .def_readwrite("space_decay", &ProximityScales::space_decay)
        .def_readwrite("spatial_unit", &ProximityScales::spatial_unit);
    m.def("temporal_proximity", &temporal_proximity, py::arg("delta_cycles"),
          py::arg("scales") = ProximityScales{});
    m.def("spatial_proximity", &spatial_proximity, py::arg("delta_distance"),
          py::arg("scales") = ProximityScales{});
    m.def("proximity", &proximity, py::arg("a"), py::arg("b"), py::arg("graph"),
          py::arg("scales") = ProximityScales{});

    m.def("compute_pi_fire", &compute_pi_fire, py::arg("burning_neighbors"),
          py::arg("fieryness"), py::arg("life_time"), py::arg("nb_fire_brigades"));
    m.def("compute_pi_brigade", &compute_pi_brigade, py::arg("discovered_new_facts"),
          py::arg("window_length"));

    py::enum_<ActionKind>(m, "ActionKind")
        .value("SendAid", ActionKind::SendAid)
        .value("SendAgression", ActionKind::SendAgression)
        .value("EmitNotification", ActionKind::EmitNotification);

    py::class_<ActionSpec>(m, "ActionSpec")
        .def_readonly("kind", &ActionSpec::kind)
        .def_readonly("magnitude", &ActionSpec::magnitude);

    py::class_<ThresholdConfig>(m, "ThresholdConfig")
        .def(py::init<>())
        .def_readwrite("advance", &ThresholdConfig::advance)
        .def_readwrite("retreat", &ThresholdConfig::retreat)
        .def_readwrite("aid_magnitude", &ThresholdConfig::aid_magnitude)
        .def_readwrite("agression_magnitude", &ThresholdConfig::agression_magnitude);
    m.def("default_brigade_thresholds", &default_brigade_thresholds);

    py::class_<Atn>(m, "Atn")
        .def("state_count", &Atn::state_count)
        .def("state_name", &Atn::state_name)
        .def("transition_count", [](const Atn& atn) { return atn.transitions().size(); })
        .def(
            "step",
            [](const Atn& atn, int current, double ai, double pi, double vitality,
               Cycle cycle) {
                GuardInput input{IndicatorVector{ai, pi}, vitality, cycle};
                const StepResult result = atn.step(current, input);
                return py::make_tuple(result.state, result.actions);
            },
            py::arg("current"), py::arg("ai"), py::arg("pi") = 0.0, py::arg("vitality") = 1.0,
            py::arg("cycle") = 0);
    m.def("build_fire_atn", &build_fire_atn, py::arg("config") = ThresholdConfig{});
    m.def("build_brigade_atn", &build_brigade_atn,
          py::arg("config") = default_brigade_thresholds());

    py::enum_<AgentKind>(m, "AgentKind")
        .value("Fire", AgentKind::Fire)
        .value("Brigade", AgentKind::Brigade);

    py::class_<IndicatorVector>(m, "IndicatorVector")
        .def_readonly("ai", &IndicatorVector::ai)
        .def_readonly("pi", &IndicatorVector::pi);

    py::class_<EngineConfig>(m, "EngineConfig")
        .def(py::init<>())
        .def_readwrite("scales", &EngineConfig::scales)
        .def_readwrite("fire_thresholds", &EngineConfig::fire_thresholds)
        .def_readwrite("brigade_thresholds", &EngineConfig::brigade_thresholds)
        .def_readwrite("neighbor_radius", &EngineConfig::neighbor_radius)
        .def_readwrite("brigade_radius", &EngineConfig::brigade_radius)
        .def_readwrite("lateness_window", &EngineConfig::lateness_window)
        .def_readwrite("discovery_window", &EngineConfig::discovery_window)
        .def_readwrite("default_fieryness", &EngineConfig::default_fieryness)
        .def_readwrite("default_brigade_hp", &EngineConfig::default_brigade_hp)
        .def_readwrite("fire_identity", &EngineConfig::fire_identity)
        .def_readwrite("brigade_identity", &EngineConfig::brigade_identity)
        .def_readwrite("seed", &EngineConfig::seed)
        .def("set", &apply_override, py::arg("key"), py::arg("value"));

    py::class_<CycleMetrics>(m, "CycleMetrics")
        .def_readonly("cycle", &CycleMetrics::cycle)
        .def_readonly("state_changes", &CycleMetrics::state_changes)
        .def_readonly("indicator_variations", &CycleMetrics::indicator_variations)
        .def_readonly("messages_sent", &CycleMetrics::messages_sent)
        .def_readonly("activity", &CycleMetrics::activity)
        .def_readonly("perceived_fires", &CycleMetrics::perceived_fires)
        .def_readonly("alive_agents", &CycleMetrics::alive_agents)
        .def("__repr__", [](const CycleMetrics& m2) { return to_csv_row(m2); });

    py::class_<SnapshotAgent>(m, "SnapshotAgent")
        .def_readonly("id", &SnapshotAgent::id)
        .def_readonly("identity", &SnapshotAgent::identity)
        .def_readonly("kind", &SnapshotAgent::kind)
        .def_readonly("state", &SnapshotAgent::state)
        .def_readonly("alive", &SnapshotAgent::alive)
        .def_readonly("indicators", &SnapshotAgent::indicators)
        .def_readonly("fsf", &SnapshotAgent::fsf)
        .def_readonly("close", &SnapshotAgent::close)
        .def_readonly("opposite", &SnapshotAgent::opposite);

    py::class_<Snapshot>(m, "Snapshot")
        .def_readonly("cycle", &Snapshot::cycle)
        .def_readonly("agents", &Snapshot::agents)
        .def("serialize", &Snapshot::serialize)
        .def("__eq__", [](const Snapshot& a, const Snapshot& b) { return a == b; });
    m.def("parse_snapshot", &parse_snapshot_text, py::arg("text"));

    py::enum_<RoutingOutcome>(m, "RoutingOutcome")
        .value("Created", RoutingOutcome::Created)
        .value("Updated", RoutingOutcome::Updated);

    py::class_<Engine>(m, "Engine")
        .def(py::init<OntologyGraph, EngineConfig>(), py::arg("graph"),
             py::arg("config") = EngineConfig{})
        .def("ingest", &Engine::ingest)
        .def("run_cycle", &Engine::run_cycle, py::arg("incoming") = std::vector<Fsf>{})
        .def("snapshot", &Engine::snapshot)
        .def("activity_series", &Engine::activity_series)
        .def("cycle", &Engine::cycle);
    m.def("metrics_to_csv", &metrics_to_csv);

    py::class_<FsfStream>(m, "FsfStream")
        .def_readwrite("cycles", &FsfStream::cycles)
        .def("serialize", &FsfStream::serialize);
    m.def("parse_fsf_stream", &parse_fsf_stream_text, py::arg("text"));

    py::class_<ScriptedIgnition>(m, "ScriptedIgnition")
        .def(py::init<>())
        .def_readwrite("cycle", &ScriptedIgnition::cycle)
        .def_readwrite("x", &ScriptedIgnition::x)
        .def_readwrite("y", &ScriptedIgnition::y);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("width", &ScenarioConfig::width)
        .def_readwrite("height", &ScenarioConfig::height)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("total_cycles", &ScenarioConfig::total_cycles)
        .def_readwrite("spread_probability", &ScenarioConfig::spread_probability)
        .def_readwrite("growth_period", &ScenarioConfig::growth_period)
        .def_readwrite("extinguish_power", &ScenarioConfig::extinguish_power)
        .def_readwrite("brigade_hp", &ScenarioConfig::brigade_hp)
        .def_readwrite("hp_loss", &ScenarioConfig::hp_loss)
        .def_readwrite("hp_loss_fieryness", &ScenarioConfig::hp_loss_fieryness)
        .def_readwrite("cell_size", &ScenarioConfig::cell_size)
        .def_readwrite("ignitions", &ScenarioConfig::ignitions)
        .def_readwrite("brigades", &ScenarioConfig::brigades)
        .def_readwrite("events", &ScenarioConfig::events)
        .def_readwrite("engine_overrides", &ScenarioConfig::engine_overrides)
        .def("validate", &ScenarioConfig::validate);
    m.def("parse_scenario_config", &parse_scenario_config_text, py::arg("text"));
    m.def("default_fire_scenario_text",
          [] { return std::string(default_fire_scenario_text()); });

    py::class_<GenerationResult>(m, "GenerationResult")
        .def_readonly("stream", &GenerationResult::stream)
        .def_readonly("peak_burning", &GenerationResult::peak_burning)
        .def_readonly("last_fire_cycle", &GenerationResult::last_fire_cycle);
    m.def("generate_scenario", &generate_scenario, py::arg("config"));
}
