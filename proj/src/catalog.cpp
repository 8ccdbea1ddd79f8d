#include "flawlens/catalog.hpp"

#include "flawlens/errors.hpp"

namespace flawlens {

namespace {

constexpr std::string_view kBuiltinSod = R"(# Built-in detection strategies.

# High complexity, access to foreign data, low cohesion.
GodClass := (WMC, TopValues(50%)) and (ATFD, HigherThan(1)) and (TCC, BottomValues(50%));

# Public state with little behaviour.
DataClass := (NOPA, HigherThan(0)) and (WMC, BottomValues(25%));

# Among the most complex methods and long.
GodMethod := (CC, TopValues(10%)) and (MLOC, HigherThan(20));
)";

std::vector<FlawEntry> make_registry() {
    auto builtins = parse_strategies(kBuiltinSod, "builtin.sod");
    auto strategy = [&](std::string_view name) -> StrategyAst {
        for (const auto& s : builtins) {
            if (s.name == name) return s;
        }
        throw NameError("missing builtin strategy " + std::string(name));
    };
    auto registry_only = [](std::string name, FlawLevel level) {
        return FlawEntry{std::move(name), level, std::nullopt, Provenance::RegistryOnly};
    };

    return {
        registry_only("Shotgun Surgery", FlawLevel::Class),
        registry_only("Wide subsystem interface", FlawLevel::Subsystem),
        registry_only("Feature Envy", FlawLevel::Method),
        registry_only("Misplaced class", FlawLevel::Subsystem),
        FlawEntry{"God class", FlawLevel::Class, strategy("GodClass"), Provenance::PaperSpecified},
        FlawEntry{"God method", FlawLevel::Method, strategy("GodMethod"), Provenance::ArtifactDefined},
        registry_only("God package", FlawLevel::Subsystem),
        FlawEntry{"Data class", FlawLevel::Class, strategy("DataClass"), Provenance::ArtifactDefined},
        registry_only("Refused Bequest", FlawLevel::Class),
        registry_only("Lack of Bridge", FlawLevel::MicroDesign),
        registry_only("Lack of Strategy", FlawLevel::MicroDesign),
        registry_only("Lack of State", FlawLevel::MicroDesign),
        registry_only("Lack of Singleton", FlawLevel::MicroDesign),
        registry_only("Lack of Facade", FlawLevel::MicroDesign),
    };
}

}  // namespace

std::string_view to_string(FlawLevel level) {
    switch (level) {
        case FlawLevel::Class: return "class";
        case FlawLevel::Method: return "method";
        case FlawLevel::Subsystem: return "subsystem";
        case FlawLevel::MicroDesign: return "micro-design";
    }
    return "?";
}

std::string_view to_string(Provenance provenance) {
    switch (provenance) {
        case Provenance::PaperSpecified: return "paper-specified";
        case Provenance::ArtifactDefined: return "artifact-defined";
        case Provenance::RegistryOnly: return "registry-only";
    }
    return "?";
}

std::string_view builtin_sod() {
    return kBuiltinSod;
}

const std::vector<FlawEntry>& builtin_registry() {
    static const std::vector<FlawEntry> registry = make_registry();
    return registry;
}

const FlawEntry& find_flaw(std::string_view name) {
    for (const auto& entry : builtin_registry()) {
        if (entry.flaw_name == name) return entry;
        if (entry.builtin_strategy && entry.builtin_strategy->name == name) return entry;
    }
    throw NameError("unknown flaw or strategy '" + std::string(name) + "'");
}

std::vector<StrategyAst> select_builtins(const std::vector<std::string>& selection) {
    std::vector<StrategyAst> out;
    for (const auto& name : selection) {
        if (name == kAllBuiltin || name == "all") {
            for (const auto& entry : builtin_registry()) {
                if (entry.builtin_strategy) out.push_back(*entry.builtin_strategy);
            }
            continue;
        }
        const auto& entry = find_flaw(name);
        if (!entry.builtin_strategy) {
            throw NoStrategyError("'" + entry.flaw_name + "' has no detection strategy (" +
                                  std::string(to_string(entry.provenance)) + ")");
        }
        out.push_back(*entry.builtin_strategy);
    }
    return out;
}

std::vector<SuspectReport> detect_all(const DesignModel& model, const std::vector<std::string>& selection) {
    std::vector<SuspectReport> reports;
    for (const auto& strategy : select_builtins(selection)) reports.push_back(evaluate(model, strategy));
    return reports;
}

}  // namespace flawlens
