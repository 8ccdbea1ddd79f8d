#include "flawlens/metrics.hpp"

#include "flawlens/errors.hpp"

#include <algorithm>
#include <iterator>

namespace flawlens {

namespace {

struct MetricName {
    Metric metric;
    std::string_view name;
};

constexpr std::array kMetricNames{
    MetricName{Metric::CC, "CC"},     MetricName{Metric::MLOC, "MLOC"}, MetricName{Metric::NOPA, "NOPA"},
    MetricName{Metric::WMC, "WMC"},   MetricName{Metric::DIT, "DIT"},   MetricName{Metric::NOC, "NOC"},
    MetricName{Metric::CBO, "CBO"},   MetricName{Metric::RFC, "RFC"},   MetricName{Metric::LCOM, "LCOM"},
    MetricName{Metric::TCC, "TCC"},   MetricName{Metric::ATFD, "ATFD"},
};

const ClassEntity& measurable_class(const DesignModel& model, const EntityId& id) {
    const auto* cls = model.find_class(id);
    if (!cls) throw MetricError("not a class in the model: '" + id.str() + "'");
    if (cls->is_external) throw MetricError("external class is not measured: '" + id.str() + "'");
    return *cls;
}

const MethodEntity& measurable_method(const DesignModel& model, const EntityId& id) {
    const auto* method = model.find_method(id);
    if (!method) throw MetricError("not a method in the model: '" + id.str() + "'");
    if (model.get_class(method->owner).is_external) {
        throw MetricError("method of an external class is not measured: '" + id.str() + "'");
    }
    return *method;
}

/// Own attributes touched by each declared method, in declaration-id order.
std::vector<std::set<EntityId>> own_access_sets(const DesignModel& model, const ClassEntity& cls) {
    std::set<EntityId> own(cls.attributes.begin(), cls.attributes.end());
    std::vector<std::set<EntityId>> sets;
    for (const auto& mid : cls.methods) {
        const auto& m = model.get_method(mid);
        std::set<EntityId> s;
        std::set_intersection(m.accesses.begin(), m.accesses.end(), own.begin(), own.end(),
                              std::inserter(s, s.end()));
        sets.push_back(std::move(s));
    }
    return sets;
}

bool intersects(const std::set<EntityId>& a, const std::set<EntityId>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            return true;
        }
    }
    return false;
}

struct PairCounts {
    long long connected = 0;
    long long disconnected = 0;
};

PairCounts count_pairs(const DesignModel& model, const ClassEntity& cls) {
    auto sets = own_access_sets(model, cls);
    PairCounts counts;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            if (intersects(sets[i], sets[j])) {
                ++counts.connected;
            } else {
                ++counts.disconnected;
            }
        }
    }
    return counts;
}

}  // namespace

std::string_view to_string(Metric metric) {
    for (const auto& entry : kMetricNames) {
        if (entry.metric == metric) return entry.name;
    }
    return "?";
}

std::string_view to_string(TargetKind kind) {
    return kind == TargetKind::Class ? "class" : "method";
}

std::optional<Metric> parse_metric(std::string_view name) {
    for (const auto& entry : kMetricNames) {
        if (entry.name == name) return entry.metric;
    }
    return std::nullopt;
}

TargetKind entity_kind(Metric metric) {
    return metric == Metric::CC || metric == Metric::MLOC ? TargetKind::Method : TargetKind::Class;
}

bool is_integral(Metric metric) {
    return metric != Metric::TCC;
}

std::vector<EntityId> measurable_entities(const DesignModel& model, TargetKind kind) {
    std::vector<EntityId> out;
    if (kind == TargetKind::Class) {
        for (const auto& [id, cls] : model.classes()) {
            if (!cls.is_external) out.push_back(id);
        }
    } else {
        for (const auto& [id, m] : model.methods()) {
            if (!model.get_class(m.owner).is_external) out.push_back(id);
        }
    }
    return out;
}

int cc(const DesignModel& model, const EntityId& method) {
    return measurable_method(model, method).cyclomatic;
}

int mloc(const DesignModel& model, const EntityId& method) {
    return measurable_method(model, method).statement_count;
}

int nopa(const DesignModel& model, const EntityId& cls) {
    const auto& c = measurable_class(model, cls);
    return static_cast<int>(std::count_if(c.attributes.begin(), c.attributes.end(), [&](const EntityId& a) {
        return model.get_attribute(a).visibility == Visibility::Public;
    }));
}

int wmc(const DesignModel& model, const EntityId& cls) {
    const auto& c = measurable_class(model, cls);
    int total = 0;
    for (const auto& m : c.methods) total += model.get_method(m).cyclomatic;
    return total;
}

int dit(const DesignModel& model, const EntityId& cls) {
    measurable_class(model, cls);
    return static_cast<int>(ancestors(model, cls).size());
}

int noc(const DesignModel& model, const EntityId& cls) {
    measurable_class(model, cls);
    return static_cast<int>(subclasses_of(model, cls).size());
}

int cbo(const DesignModel& model, const EntityId& cls) {
    const auto& c = measurable_class(model, cls);
    std::set<EntityId> coupled;
    for (const auto& mid : c.methods) {
        const auto& m = model.get_method(mid);
        for (const auto& callee : m.calls) coupled.insert(model.get_method(callee).owner);
        for (const auto& attr : m.accesses) coupled.insert(model.get_attribute(attr).owner);
    }
    coupled.erase(cls);
    return static_cast<int>(coupled.size());
}

int rfc(const DesignModel& model, const EntityId& cls) {
    const auto& c = measurable_class(model, cls);
    std::set<EntityId> response(c.methods.begin(), c.methods.end());
    for (const auto& mid : c.methods) {
        const auto& calls = model.get_method(mid).calls;
        response.insert(calls.begin(), calls.end());
    }
    return static_cast<int>(response.size());
}

int lcom(const DesignModel& model, const EntityId& cls) {
    auto counts = count_pairs(model, measurable_class(model, cls));
    return static_cast<int>(std::max(counts.disconnected - counts.connected, 0LL));
}

double tcc(const DesignModel& model, const EntityId& cls) {
    const auto& c = measurable_class(model, cls);
    if (c.methods.size() < 2) return 1.0;
    auto counts = count_pairs(model, c);
    return static_cast<double>(counts.connected) /
           static_cast<double>(counts.connected + counts.disconnected);
}

int atfd(const DesignModel& model, const EntityId& cls) {
    const auto& c = measurable_class(model, cls);
    std::set<EntityId> related{cls};
    for (const auto& a : ancestors(model, cls)) related.insert(a);

    std::set<EntityId> foreign;
    for (const auto& mid : c.methods) {
        const auto& m = model.get_method(mid);
        for (const auto& attr : m.accesses) {
            const auto& owner = model.get_attribute(attr).owner;
            if (!related.count(owner)) foreign.insert(owner);
        }
        for (const auto& callee_id : m.calls) {
            const auto& callee = model.get_method(callee_id);
            if (callee.accessor_of && !related.count(callee.owner)) foreign.insert(callee.owner);
        }
    }
    return static_cast<int>(foreign.size());
}

double compute(const DesignModel& model, Metric metric, const EntityId& entity) {
    switch (metric) {
        case Metric::CC: return cc(model, entity);
        case Metric::MLOC: return mloc(model, entity);
        case Metric::NOPA: return nopa(model, entity);
        case Metric::WMC: return wmc(model, entity);
        case Metric::DIT: return dit(model, entity);
        case Metric::NOC: return noc(model, entity);
        case Metric::CBO: return cbo(model, entity);
        case Metric::RFC: return rfc(model, entity);
        case Metric::LCOM: return lcom(model, entity);
        case Metric::TCC: return tcc(model, entity);
        case Metric::ATFD: return atfd(model, entity);
    }
    throw MetricError("unknown metric");
}

MetricTable compute_table(const DesignModel& model, Metric metric) {
    MetricTable table;
    table.metric = metric;
    for (const auto& id : measurable_entities(model, entity_kind(metric))) {
        table.values.emplace(id, compute(model, metric, id));
    }
    return table;
}

}  // namespace flawlens
