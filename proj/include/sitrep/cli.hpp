#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sitrep/fsf.hpp"

namespace sitrep::cli {

// Exit codes shared by every command: 0 success, 1 runtime or I/O
// failure, 2 validation or usage error.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kValidationError = 2;

struct GenOptions {
    std::string scenario_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;  // overrides the config's seed
};

/// Which cycles get a snapshot file. Specs are integers, `all` or
/// `none`; the default is none.
struct SnapshotSelection {
    bool all = false;
    std::vector<Cycle> cycles;

    static SnapshotSelection parse(const std::vector<std::string>& specs);
    bool wants(Cycle cycle) const;
};

struct RunOptions {
    std::string ontology_path;
    std::string scenario_path;  // generate then run
    std::string stream_path;    // replay an existing stream
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> snapshot_specs;
    std::vector<std::pair<std::string, std::string>> overrides;  // --set key=value
};

/// Splits a `key=value` override flag. Throws std::invalid_argument
/// when there is no '='.
std::pair<std::string, std::string> parse_override_flag(const std::string& flag);

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_inspect(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace sitrep::cli
