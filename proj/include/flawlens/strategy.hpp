#pragma once

#include "flawlens/filter.hpp"
#include "flawlens/metrics.hpp"
#include "flawlens/model.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace flawlens {

/// Node of a detection-strategy expression: either an atom (metric, filter)
/// or a binary composition with exactly two children.
struct StrategyExpr {
    enum class Kind { Atom, And, Or, ButNot };

    Kind kind = Kind::Atom;
    Metric metric = Metric::WMC;
    FilterSpec filter;
    std::vector<StrategyExpr> children;

    static StrategyExpr atom(Metric metric, FilterSpec filter);
    static StrategyExpr binary(Kind kind, StrategyExpr left, StrategyExpr right);

    bool operator==(const StrategyExpr&) const = default;
};

struct StrategyAst {
    std::string name;
    TargetKind target_kind = TargetKind::Class;
    StrategyExpr expr;

    bool operator==(const StrategyAst&) const = default;
};

struct ParseOptions {
    /// Accept `$name` placeholders in filter arguments (tuning templates).
    bool allow_holes = false;
};

/// Parses a SOD script containing zero or more `Name := expr;` definitions.
///
/// `and` and `butnot` bind tighter than `or`; all three are left-associative.
/// Throws ParseError/LexError (syntax), NameError (unknown metric or filter),
/// StrategyTypeError (class and method metrics mixed) and SpecError
/// (ill-formed filter parameters).
std::vector<StrategyAst> parse_strategies(std::string_view text, const std::string& file = {},
                                          ParseOptions options = {});

/// Parses text that must hold exactly one strategy.
StrategyAst parse_strategy(std::string_view text, const std::string& file = {}, ParseOptions options = {});

std::vector<StrategyAst> load_strategies(const std::string& path, ParseOptions options = {});

/// Canonical SOD text of an expression (minimal parentheses).
std::string to_sod(const StrategyExpr& expr);
/// Canonical `Name := expr;` line.
std::string to_sod(const StrategyAst& strategy);
std::string to_sod(const FilterSpec& filter);
std::string to_sod(const FilterArg& arg);

/// Metrics referenced anywhere in the strategy, in canonical metric order.
std::vector<Metric> metrics_used(const StrategyAst& strategy);

/// Names of unbound placeholders.
std::set<std::string> holes(const StrategyAst& strategy);

/// Substitutes placeholder values and re-checks every filter (SpecError).
StrategyAst bind_holes(const StrategyAst& strategy, const std::map<std::string, FilterArg>& values);

inline constexpr std::size_t kDefaultSmallSystemLimit = 20;

/// Warns about percentage-parameterised TopValues/BottomValues atoms when
/// the analysed system has fewer than `small_system_limit` entities.
std::vector<std::string> lint_strategy(const StrategyAst& strategy, std::size_t model_size,
                                       std::size_t small_system_limit = kDefaultSmallSystemLimit);

struct SuspectReport {
    std::string strategy;
    TargetKind target_kind = TargetKind::Class;
    std::set<EntityId> suspects;
    /// For each suspect, the value of every metric the strategy references.
    std::map<EntityId, std::map<Metric, double>> evidence;
    std::vector<std::string> warnings;

    bool operator==(const SuspectReport&) const = default;
};

/// Evaluates every atom over the non-external entities of the strategy's
/// target kind and combines the results with set algebra.
SuspectReport evaluate(const DesignModel& model, const StrategyAst& strategy);

}  // namespace flawlens
