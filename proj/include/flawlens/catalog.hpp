#pragma once

#include "flawlens/model.hpp"
#include "flawlens/strategy.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flawlens {

enum class FlawLevel { Class, Method, Subsystem, MicroDesign };

enum class Provenance {
    PaperSpecified,   // strategy formula and thresholds taken from the literature
    ArtifactDefined,  // strategy defined by this tool
    RegistryOnly,     // named flaw without a detection strategy
};

std::string_view to_string(FlawLevel level);
std::string_view to_string(Provenance provenance);

struct FlawEntry {
    std::string flaw_name;
    FlawLevel level = FlawLevel::Class;
    std::optional<StrategyAst> builtin_strategy;
    Provenance provenance = Provenance::RegistryOnly;
};

/// SOD source of the built-in strategies (GodClass, DataClass, GodMethod).
std::string_view builtin_sod();

/// The design-flaw taxonomy. Exactly three entries carry a strategy.
const std::vector<FlawEntry>& builtin_registry();

/// Looks a flaw up by flaw name ("God class") or strategy name ("GodClass").
/// Throws NameError when neither matches.
const FlawEntry& find_flaw(std::string_view name);

inline constexpr std::string_view kAllBuiltin = "all-builtin";

/// Strategies selected by name, in selection order. "all-builtin" (or "all")
/// expands to every built-in strategy in registry order. Throws NameError for
/// unknown names and NoStrategyError for registry-only flaws.
std::vector<StrategyAst> select_builtins(const std::vector<std::string>& selection);

std::vector<SuspectReport> detect_all(const DesignModel& model, const std::vector<std::string>& selection);

}  // namespace flawlens
