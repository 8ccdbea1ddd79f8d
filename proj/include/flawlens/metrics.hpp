#pragma once

#include "flawlens/model.hpp"

#include <array>
#include <map>
#include <optional>
#include <string_view>

namespace flawlens {

enum class Metric { CC, MLOC, NOPA, WMC, DIT, NOC, CBO, RFC, LCOM, TCC, ATFD };

inline constexpr std::array kAllMetrics{
    Metric::CC,  Metric::MLOC, Metric::NOPA, Metric::WMC,  Metric::DIT,  Metric::NOC,
    Metric::CBO, Metric::RFC,  Metric::LCOM, Metric::TCC,  Metric::ATFD,
};

/// Entities a detection strategy ranges over.
enum class TargetKind { Class, Method };

std::string_view to_string(Metric metric);
std::string_view to_string(TargetKind kind);
std::optional<Metric> parse_metric(std::string_view name);

/// CC and MLOC measure methods; every other metric measures classes.
TargetKind entity_kind(Metric metric);

/// TCC is the only fractional metric.
bool is_integral(Metric metric);

/// Metric values keyed by the non-external entities of the metric's kind.
struct MetricTable {
    Metric metric = Metric::WMC;
    std::map<EntityId, double> values;

    bool operator==(const MetricTable&) const = default;
};

/// Non-external entities a strategy over `kind` would consider.
std::vector<EntityId> measurable_entities(const DesignModel& model, TargetKind kind);

// Per-entity metrics. Each throws MetricError for an unknown id, an id of the
// wrong kind, or a member of an external class.

int cc(const DesignModel& model, const EntityId& method);
int mloc(const DesignModel& model, const EntityId& method);
int nopa(const DesignModel& model, const EntityId& cls);
int wmc(const DesignModel& model, const EntityId& cls);
int dit(const DesignModel& model, const EntityId& cls);
int noc(const DesignModel& model, const EntityId& cls);
/// Efferent coupling: distinct other classes whose methods are called or
/// whose attributes are accessed. Inheritance alone does not couple.
int cbo(const DesignModel& model, const EntityId& cls);
/// Declared methods plus the methods they call directly (one level).
int rfc(const DesignModel& model, const EntityId& cls);
/// max(P - Q, 0) over pairs of declared methods, similarity = shared own attributes.
int lcom(const DesignModel& model, const EntityId& cls);
/// Fraction of declared-method pairs sharing an own attribute; 1.0 below two methods.
double tcc(const DesignModel& model, const EntityId& cls);
/// Unrelated classes (not self, not ancestors) whose data is reached directly
/// or through accessor methods.
int atfd(const DesignModel& model, const EntityId& cls);

double compute(const DesignModel& model, Metric metric, const EntityId& entity);

MetricTable compute_table(const DesignModel& model, Metric metric);

}  // namespace flawlens
