#pragma once

#include "flawlens/metrics.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace flawlens {

enum class FilterKind {
    HigherThan,
    LowerThan,
    TopValues,
    BottomValues,
    BoxPlotUpper,
    BoxPlotLower,
    StdDevAbove,
    StdDevBelow,
    Between,
};

std::string_view to_string(FilterKind kind);
std::optional<FilterKind> parse_filter_kind(std::string_view name);

/// One filter parameter: a number, optionally a percentage, or a named hole
/// awaiting a value during tuning.
struct FilterArg {
    double value = 0.0;
    bool percent = false;
    std::string hole;

    static FilterArg number(double v) { return {v, false, {}}; }
    static FilterArg percentage(double v) { return {v, true, {}}; }
    static FilterArg placeholder(std::string name) { return {0.0, false, std::move(name)}; }

    bool is_hole() const { return !hole.empty(); }
    bool operator==(const FilterArg&) const = default;
};

struct FilterSpec {
    FilterKind kind = FilterKind::HigherThan;
    std::vector<FilterArg> args;

    static FilterSpec higher_than(double t) { return {FilterKind::HigherThan, {FilterArg::number(t)}}; }
    static FilterSpec lower_than(double t) { return {FilterKind::LowerThan, {FilterArg::number(t)}}; }
    static FilterSpec top_values(FilterArg amount) { return {FilterKind::TopValues, {amount}}; }
    static FilterSpec bottom_values(FilterArg amount) { return {FilterKind::BottomValues, {amount}}; }
    static FilterSpec box_plot_upper() { return {FilterKind::BoxPlotUpper, {}}; }
    static FilterSpec box_plot_lower() { return {FilterKind::BoxPlotLower, {}}; }
    static FilterSpec std_dev_above(double k) { return {FilterKind::StdDevAbove, {FilterArg::number(k)}}; }
    static FilterSpec std_dev_below(double k) { return {FilterKind::StdDevBelow, {FilterArg::number(k)}}; }
    static FilterSpec between(double a, double b) {
        return {FilterKind::Between, {FilterArg::number(a), FilterArg::number(b)}};
    }

    bool has_holes() const;
    bool operator==(const FilterSpec&) const = default;
};

/// Checks arity and parameter ranges. With `allow_holes`, unbound holes are
/// accepted and only concrete arguments are range-checked. Throws SpecError.
void check_filter(const FilterSpec& spec, bool allow_holes = false);

/// Entities of `table` kept by the filter.
///
/// Thresholds are strict. Relative filters keep every entity tied with the
/// cutoff value; a percentage p selects ceil(p * N / 100) entities. Box-plot
/// fences sit 1.5 IQR beyond Tukey hinges; standard-deviation bands use the
/// population deviation.
///
/// Throws SpecError for ill-formed parameters and FilterError when a
/// statistical filter sees fewer values than it needs (4 for box plots,
/// 2 for standard deviation).
std::set<EntityId> apply_filter(const MetricTable& table, const FilterSpec& spec);

enum class CompositionOp { And, Or, ButNot };

std::string_view to_string(CompositionOp op);

/// and = intersection, or = union, butnot = set difference.
std::set<EntityId> compose(const std::set<EntityId>& left, CompositionOp op, const std::set<EntityId>& right);

/// Tukey hinges of an ascending-sorted sample: the lower and upper quartiles
/// are medians of the halves on either side of the median (the median itself
/// excluded when the size is odd).
struct Hinges {
    double lower;
    double upper;
};
Hinges tukey_hinges(const std::vector<double>& sorted);

}  // namespace flawlens
