#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flawlens {

enum class OutputFormat { Text, Json };

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kSuspectsFound = 1;
inline constexpr int kInputError = 2;
inline constexpr int kModelError = 3;
}  // namespace exit_code

struct RunConfig {
    std::vector<std::string> sources;
    std::optional<std::string> facts;
    std::vector<std::string> strategy_files;
    std::vector<std::string> builtins;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::string> output;
    bool fail_on_suspects = false;
    std::optional<std::string> dump_facts;
    bool metrics_only = false;
    std::size_t small_system_limit = 20;
};

struct TuneConfig {
    std::string corpus;
    std::string templ;
    std::string grid;
    std::size_t cap = 10000;
};

/// Runs the inspection pipeline: build or load the model, validate it,
/// evaluate every strategy, write the report to `out` (or config.output).
/// Diagnostics and lint warnings go to `err`. Returns an exit_code value.
int run_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);

int run_tune(const TuneConfig& config, std::ostream& out, std::ostream& err);

}  // namespace flawlens
