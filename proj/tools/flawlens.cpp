#include "flawlens/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    CLI::App app{"flawlens: metric-based design flaw detection for object-oriented code"};
    app.require_subcommand(1);

    flawlens::RunConfig run;
    std::string facts;
    std::string output;
    std::string dump_facts;
    auto* analyze = app.add_subcommand("analyze", "Compute metrics and report design-flaw suspects");
    auto* src_opt = analyze->add_option("--src", run.sources, "MiniOO source files");
    auto* facts_opt = analyze->add_option("--facts", facts, "Facts JSON file");
    src_opt->excludes(facts_opt);
    analyze->add_option("--strategy", run.strategy_files, "SOD strategy file (repeatable)");
    analyze->add_option("--builtin", run.builtins, "Built-in strategy or flaw name, or 'all' (repeatable)");
    analyze->add_option("--format", run.format, "Report format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, flawlens::OutputFormat>{{"text", flawlens::OutputFormat::Text},
                                                          {"json", flawlens::OutputFormat::Json}},
            CLI::ignore_case));
    analyze->add_option("--output", output, "Write the report to this file instead of stdout");
    analyze->add_flag("--fail-on-suspects", run.fail_on_suspects, "Exit with status 1 when suspects are found");
    analyze->add_option("--dump-facts", dump_facts, "Also write the extracted model as facts JSON");
    analyze->add_flag("--metrics-only", run.metrics_only, "Print metric tables instead of running strategies");
    analyze->add_option("--small-system-limit", run.small_system_limit,
                        "Entity count below which percentage filters draw a warning");

    flawlens::TuneConfig tune;
    auto* tune_cmd = app.add_subcommand("tune", "Calibrate strategy thresholds against a labeled corpus");
    tune_cmd->add_option("--corpus", tune.corpus, "Corpus JSON file")->required();
    tune_cmd->add_option("--template", tune.templ, "SOD template with $placeholders")->required();
    tune_cmd->add_option("--grid", tune.grid, "Grid JSON file")->required();
    tune_cmd->add_option("--cap", tune.cap, "Maximum number of grid assignments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : flawlens::exit_code::kInputError;
    }

    if (*analyze) {
        if (!facts.empty()) run.facts = facts;
        if (!output.empty()) run.output = output;
        if (!dump_facts.empty()) run.dump_facts = dump_facts;
        return flawlens::run_analyze(run, std::cout, std::cerr);
    }
    return flawlens::run_tune(tune, std::cout, std::cerr);
}
