#include "flawlens/filter.hpp"

#include "flawlens/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <numeric>

namespace flawlens {

namespace {

struct FilterName {
    FilterKind kind;
    std::string_view name;
};

constexpr std::array kFilterNames{
    FilterName{FilterKind::HigherThan, "HigherThan"},     FilterName{FilterKind::LowerThan, "LowerThan"},
    FilterName{FilterKind::TopValues, "TopValues"},       FilterName{FilterKind::BottomValues, "BottomValues"},
    FilterName{FilterKind::BoxPlotUpper, "BoxPlotUpper"}, FilterName{FilterKind::BoxPlotLower, "BoxPlotLower"},
    FilterName{FilterKind::StdDevAbove, "StdDevAbove"},   FilterName{FilterKind::StdDevBelow, "StdDevBelow"},
    FilterName{FilterKind::Between, "Between"},
};

std::size_t expected_arity(FilterKind kind) {
    switch (kind) {
        case FilterKind::BoxPlotUpper:
        case FilterKind::BoxPlotLower: return 0;
        case FilterKind::Between: return 2;
        default: return 1;
    }
}

[[noreturn]] void spec_error(FilterKind kind, const std::string& message) {
    throw SpecError(std::string(to_string(kind)) + ": " + message);
}

std::size_t relative_count(const FilterArg& amount, std::size_t n) {
    double k = amount.percent ? std::ceil(amount.value * static_cast<double>(n) / 100.0) : amount.value;
    return std::min(static_cast<std::size_t>(k), n);
}

std::set<EntityId> keep_if(const MetricTable& table, auto predicate) {
    std::set<EntityId> out;
    for (const auto& [id, v] : table.values) {
        if (predicate(v)) out.insert(id);
    }
    return out;
}

std::vector<double> sorted_values(const MetricTable& table) {
    std::vector<double> v;
    v.reserve(table.values.size());
    for (const auto& [id, value] : table.values) v.push_back(value);
    std::sort(v.begin(), v.end());
    return v;
}

double median(const double* first, std::size_t n) {
    return n % 2 == 1 ? first[n / 2] : (first[n / 2 - 1] + first[n / 2]) / 2.0;
}

}  // namespace

std::string_view to_string(FilterKind kind) {
    for (const auto& entry : kFilterNames) {
        if (entry.kind == kind) return entry.name;
    }
    return "?";
}

std::optional<FilterKind> parse_filter_kind(std::string_view name) {
    for (const auto& entry : kFilterNames) {
        if (entry.name == name) return entry.kind;
    }
    return std::nullopt;
}

bool FilterSpec::has_holes() const {
    return std::any_of(args.begin(), args.end(), [](const FilterArg& a) { return a.is_hole(); });
}

void check_filter(const FilterSpec& spec, bool allow_holes) {
    const auto kind = spec.kind;
    if (spec.args.size() != expected_arity(kind)) {
        spec_error(kind, "expects " + std::to_string(expected_arity(kind)) + " argument(s), got " +
                             std::to_string(spec.args.size()));
    }
    for (const auto& arg : spec.args) {
        if (arg.is_hole()) {
            if (!allow_holes) spec_error(kind, "unbound parameter $" + arg.hole);
            continue;
        }
        if (!std::isfinite(arg.value)) spec_error(kind, "arguments must be finite");
        bool relative = kind == FilterKind::TopValues || kind == FilterKind::BottomValues;
        if (arg.percent && !relative) spec_error(kind, "does not accept percentages");
    }

    auto concrete = [&](std::size_t i) { return !spec.args[i].is_hole(); };
    switch (kind) {
        case FilterKind::TopValues:
        case FilterKind::BottomValues: {
            if (!concrete(0)) break;
            const auto& a = spec.args[0];
            if (a.percent) {
                if (!(a.value > 0.0 && a.value <= 100.0)) spec_error(kind, "percentage must lie in (0, 100]");
            } else if (a.value < 1.0 || std::floor(a.value) != a.value) {
                spec_error(kind, "count must be a positive integer");
            }
            break;
        }
        case FilterKind::StdDevAbove:
        case FilterKind::StdDevBelow:
            if (concrete(0) && !(spec.args[0].value > 0.0)) spec_error(kind, "k must be positive");
            break;
        case FilterKind::Between:
            if (concrete(0) && concrete(1) && !(spec.args[0].value < spec.args[1].value)) {
                spec_error(kind, "lower bound must be below upper bound");
            }
            break;
        default:
            break;
    }
}

Hinges tukey_hinges(const std::vector<double>& sorted) {
    const std::size_t n = sorted.size();
    const std::size_t half = n / 2;
    const std::size_t upper_start = n % 2 == 1 ? half + 1 : half;
    return {median(sorted.data(), half), median(sorted.data() + upper_start, half)};
}

std::set<EntityId> apply_filter(const MetricTable& table, const FilterSpec& spec) {
    check_filter(spec);
    const std::size_t n = table.values.size();

    switch (spec.kind) {
        case FilterKind::HigherThan: {
            double t = spec.args[0].value;
            return keep_if(table, [t](double v) { return v > t; });
        }
        case FilterKind::LowerThan: {
            double t = spec.args[0].value;
            return keep_if(table, [t](double v) { return v < t; });
        }
        case FilterKind::Between: {
            double a = spec.args[0].value;
            double b = spec.args[1].value;
            return keep_if(table, [a, b](double v) { return a < v && v < b; });
        }
        case FilterKind::TopValues:
        case FilterKind::BottomValues: {
            std::size_t k = relative_count(spec.args[0], n);
            if (k == 0) return {};
            auto values = sorted_values(table);
            if (spec.kind == FilterKind::TopValues) {
                double cutoff = values[n - k];
                return keep_if(table, [cutoff](double v) { return v >= cutoff; });
            }
            double cutoff = values[k - 1];
            return keep_if(table, [cutoff](double v) { return v <= cutoff; });
        }
        case FilterKind::BoxPlotUpper:
        case FilterKind::BoxPlotLower: {
            if (n < 4) {
                throw FilterError(std::string(to_string(spec.kind)) + " needs at least 4 values, table " +
                                  std::string(to_string(table.metric)) + " has " + std::to_string(n));
            }
            auto hinges = tukey_hinges(sorted_values(table));
            double iqr = hinges.upper - hinges.lower;
            if (spec.kind == FilterKind::BoxPlotUpper) {
                double fence = hinges.upper + 1.5 * iqr;
                return keep_if(table, [fence](double v) { return v > fence; });
            }
            double fence = hinges.lower - 1.5 * iqr;
            return keep_if(table, [fence](double v) { return v < fence; });
        }
        case FilterKind::StdDevAbove:
        case FilterKind::StdDevBelow: {
            if (n < 2) {
                throw FilterError(std::string(to_string(spec.kind)) + " needs at least 2 values, table " +
                                  std::string(to_string(table.metric)) + " has " + std::to_string(n));
            }
            double sum = 0.0;
            for (const auto& [id, v] : table.values) sum += v;
            double mean = sum / static_cast<double>(n);
            double squares = 0.0;
            for (const auto& [id, v] : table.values) squares += (v - mean) * (v - mean);
            double sigma = std::sqrt(squares / static_cast<double>(n));
            double k = spec.args[0].value;
            if (spec.kind == FilterKind::StdDevAbove) {
                double limit = mean + k * sigma;
                return keep_if(table, [limit](double v) { return v > limit; });
            }
            double limit = mean - k * sigma;
            return keep_if(table, [limit](double v) { return v < limit; });
        }
    }
    return {};
}

std::string_view to_string(CompositionOp op) {
    switch (op) {
        case CompositionOp::And: return "and";
        case CompositionOp::Or: return "or";
        case CompositionOp::ButNot: return "butnot";
    }
    return "?";
}

std::set<EntityId> compose(const std::set<EntityId>& left, CompositionOp op, const std::set<EntityId>& right) {
    std::set<EntityId> out;
    auto sink = std::inserter(out, out.end());
    switch (op) {
        case CompositionOp::And:
            std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), sink);
            break;
        case CompositionOp::Or:
            std::set_union(left.begin(), left.end(), right.begin(), right.end(), sink);
            break;
        case CompositionOp::ButNot:
            std::set_difference(left.begin(), left.end(), right.begin(), right.end(), sink);
            break;
    }
    return out;
}

}  // namespace flawlens
