#include "flawlens/strategy.hpp"

namespace flawlens {

namespace {

class Evaluator {
public:
    explicit Evaluator(const DesignModel& model) : model_(model) {}

    const MetricTable& table(Metric metric) {
        auto it = tables_.find(metric);
        if (it == tables_.end()) it = tables_.emplace(metric, compute_table(model_, metric)).first;
        return it->second;
    }

    std::set<EntityId> run(const StrategyExpr& e) {
        switch (e.kind) {
            case StrategyExpr::Kind::Atom:
                return apply_filter(table(e.metric), e.filter);
            case StrategyExpr::Kind::And:
                return compose(run(e.children[0]), CompositionOp::And, run(e.children[1]));
            case StrategyExpr::Kind::Or:
                return compose(run(e.children[0]), CompositionOp::Or, run(e.children[1]));
            case StrategyExpr::Kind::ButNot:
                return compose(run(e.children[0]), CompositionOp::ButNot, run(e.children[1]));
        }
        return {};
    }

private:
    const DesignModel& model_;
    std::map<Metric, MetricTable> tables_;
};

}  // namespace

SuspectReport evaluate(const DesignModel& model, const StrategyAst& strategy) {
    Evaluator evaluator(model);
    SuspectReport report;
    report.strategy = strategy.name;
    report.target_kind = strategy.target_kind;
    report.suspects = evaluator.run(strategy.expr);

    const auto metrics = metrics_used(strategy);
    for (const auto& id : report.suspects) {
        auto& row = report.evidence[id];
        for (auto metric : metrics) row[metric] = evaluator.table(metric).values.at(id);
    }
    return report;
}

}  // namespace flawlens
