#include "flawlens/cli.hpp"

#include "flawlens/builder.hpp"
#include "flawlens/catalog.hpp"
#include "flawlens/errors.hpp"
#include "flawlens/facts.hpp"
#include "flawlens/parser.hpp"
#include "flawlens/report.hpp"
#include "flawlens/strategy.hpp"
#include "flawlens/tuning.hpp"

#include <fstream>
#include <ostream>

namespace flawlens {

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

void check_config(const RunConfig& config) {
    if (config.sources.empty() == !config.facts.has_value()) {
        throw UsageError("exactly one of --src or --facts is required");
    }
    if (!config.metrics_only && config.strategy_files.empty() && config.builtins.empty()) {
        throw UsageError("no strategy given: use --strategy, --builtin or --metrics-only");
    }
}

DesignModel obtain_model(const RunConfig& config) {
    if (config.facts) return load_facts(*config.facts);
    return build_model(parse_program(read_sources(config.sources)));
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
    if (!config.output) {
        out << text;
        return;
    }
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) throw IoError("cannot write output file '" + *config.output + "'");
    file << text;
}

int analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
    check_config(config);
    DesignModel model = obtain_model(config);
    require_valid(model);
    if (config.dump_facts) save_facts(model, *config.dump_facts);

    if (config.metrics_only) {
        std::vector<MetricTable> tables;
        for (auto metric : kAllMetrics) tables.push_back(compute_table(model, metric));
        emit(config, config.format == OutputFormat::Json ? tables_to_json(tables) : tables_to_text(tables), out);
        return exit_code::kSuccess;
    }

    std::vector<StrategyAst> strategies;
    for (const auto& path : config.strategy_files) {
        for (auto& s : load_strategies(path)) strategies.push_back(std::move(s));
    }
    for (auto& s : select_builtins(config.builtins)) strategies.push_back(std::move(s));

    std::vector<SuspectReport> reports;
    bool any_suspects = false;
    for (const auto& strategy : strategies) {
        SuspectReport report = evaluate(model, strategy);
        std::size_t size = measurable_entities(model, strategy.target_kind).size();
        report.warnings = lint_strategy(strategy, size, config.small_system_limit);
        for (const auto& w : report.warnings) err << "warning: " << w << "\n";
        any_suspects = any_suspects || !report.suspects.empty();
        reports.push_back(std::move(report));
    }

    emit(config, config.format == OutputFormat::Json ? reports_to_json(reports) : reports_to_text(reports), out);
    return any_suspects && config.fail_on_suspects ? exit_code::kSuspectsFound : exit_code::kSuccess;
}

}  // namespace

int run_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        return analyze(config, out, err);
    } catch (const ModelError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kModelError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kInputError;
    }
}

int run_tune(const TuneConfig& config, std::ostream& out, std::ostream& err) {
    try {
        LabeledCorpus corpus = load_corpus(config.corpus);
        auto templates = load_strategies(config.templ, {.allow_holes = true});
        if (templates.size() != 1) {
            throw UsageError(config.templ + ": a tuning template must define exactly one strategy");
        }
        TunableStrategy strategy{std::move(templates.front()), load_grid(config.grid)};
        TuneResult result = tune(corpus, strategy, config.cap);
        out << tuning_to_text(result);
        return exit_code::kSuccess;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::kInputError;
    }
}

}  // namespace flawlens
