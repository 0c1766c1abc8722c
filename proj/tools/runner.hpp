#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqgrover/analysis.hpp"
#include "sqgrover/grover.hpp"

namespace sqg::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Diagnostic {
    std::string key;
    std::string message;
};

struct ExperimentInfo {
    std::string id;
    std::string description;
};

const std::vector<ExperimentInfo>& experiments();

/// Every accepted key with its default. Anything not in this tree is rejected.
json default_config();

/// Reads a JSON file; throws ConfigError if it is unreadable or malformed.
json load_config_file(const std::filesystem::path& path);

/// Applies `a.b.c=value`. The value is parsed as JSON when possible and kept
/// as a plain string otherwise.
void apply_override(json& tree, const std::string& assignment);

/// Recursive object merge; `over` wins.
json merged(const json& base, const json& over);

/// Full schema check of a merged tree. Reports every violation.
std::vector<Diagnostic> check_config(const json& tree);

struct RunConfig {
    std::string experiment = "fig3";
    std::filesystem::path out = "out";
    std::uint64_t seed = 0;
    int random_samples = 0;
    DeviceParams params = paper_device();
    NoiseConfig noise{};
    FigureGrid grid{};
    LogicalState target{};
    int iterations = 6;
};

/// Converts a tree that passed check_config; throws ConfigError otherwise.
RunConfig resolve(const json& tree);

/// Resolved settings back to a tree (for the manifest).
json to_json(const RunConfig& config);

/// Header plus rows, comma-separated, '\n' endings, 12 significant digits.
std::string format_csv(const Table& table);

std::string sha256_hex(const std::string& bytes);

struct RunOutput {
    std::vector<std::filesystem::path> files;  // manifest.json last
};

/// Runs one experiment and writes its files plus manifest.json into
/// config.out. DomainError propagates for numerical-domain violations.
RunOutput run(const RunConfig& config);

/// The whole command line: verbs, flags, exit codes.
int main_entry(int argc, char** argv);

}  // namespace sqg::cli
