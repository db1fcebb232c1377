#include <CLI11.hpp>
#include <iostream>

#include "sitrep/cli.hpp"

using namespace sitrep;

int main(int argc, char** argv) {
    CLI::App app{"sitrep: factual-agent situation representation engine"};
    app.require_subcommand(1);

    cli::GenOptions gen_options;
    CLI::App* gen = app.add_subcommand("gen", "generate an FSF event stream from a scenario");
    gen->add_option("--scenario", gen_options.scenario_path, "scenario config document")
        ->required();
    gen->add_option("--out", gen_options.out_path, "output stream file")->required();
    gen->add_option("--seed", gen_options.seed, "override the scenario seed");

    cli::RunOptions run_options;
    std::vector<std::string> run_set_flags;
    auto add_run_flags = [&](CLI::App* cmd, bool stream_required) {
        cmd->add_option("--ontology", run_options.ontology_path, "ontology document")
            ->required();
        auto* stream =
            cmd->add_option("--stream", run_options.stream_path, "existing FSF stream");
        if (stream_required) {
            stream->required();
        } else {
            cmd->add_option("--scenario", run_options.scenario_path,
                            "scenario config to generate and run");
        }
        cmd->add_option("--out", run_options.out_dir, "output directory")->required();
        cmd->add_option("--seed", run_options.seed, "override the scenario/engine seed");
        cmd->add_option("--snapshot", run_options.snapshot_specs,
                        "cycles to snapshot (number, 'all' or 'none')");
        cmd->add_option("--set", run_set_flags, "engine config override key=value");
    };

    CLI::App* run = app.add_subcommand("run", "run a stream or scenario through the engine");
    add_run_flags(run, false);

    cli::RunOptions replay_options;
    std::vector<std::string> replay_set_flags;
    CLI::App* replay = app.add_subcommand("replay", "run an existing stream (alias of run)");
    replay->add_option("--ontology", replay_options.ontology_path, "ontology document")
        ->required();
    replay->add_option("--stream", replay_options.stream_path, "existing FSF stream")
        ->required();
    replay->add_option("--out", replay_options.out_dir, "output directory")->required();
    replay->add_option("--seed", replay_options.seed, "override the engine seed");
    replay->add_option("--snapshot", replay_options.snapshot_specs,
                       "cycles to snapshot (number, 'all' or 'none')");
    replay->add_option("--set", replay_set_flags, "engine config override key=value");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "validate any sitrep document");
    validate->add_option("path", validate_path, "document to validate")->required();

    std::string inspect_path;
    CLI::App* inspect = app.add_subcommand("inspect", "print a snapshot human-readably");
    inspect->add_option("path", inspect_path, "snapshot file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kValidationError;
    }

    try {
        if (gen->parsed()) return cli::cmd_gen(gen_options, std::cout, std::cerr);
        if (run->parsed()) {
            for (const std::string& flag : run_set_flags) {
                run_options.overrides.push_back(cli::parse_override_flag(flag));
            }
            return cli::cmd_run(run_options, std::cout, std::cerr);
        }
        if (replay->parsed()) {
            for (const std::string& flag : replay_set_flags) {
                replay_options.overrides.push_back(cli::parse_override_flag(flag));
            }
            return cli::cmd_run(replay_options, std::cout, std::cerr);
        }
        if (validate->parsed()) return cli::cmd_validate(validate_path, std::cout, std::cerr);
        if (inspect->parsed()) return cli::cmd_inspect(inspect_path, std::cout, std::cerr);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kValidationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kRuntimeError;
    }
    return cli::kValidationError;
}
