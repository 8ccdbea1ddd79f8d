#include "flawlens/cli.hpp"
#include "flawlens/facts.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace flawlens;
using namespace flawlens::testing;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run analyze(RunConfig config) {
    std::ostringstream out, err;
    int code = run_analyze(config, out, err);
    return {code, out.str(), err.str()};
}

Run tune_run(TuneConfig config) {
    std::ostringstream out, err;
    int code = run_tune(config, out, err);
    return {code, out.str(), err.str()};
}

RunConfig planted(std::vector<std::string> builtins, OutputFormat format = OutputFormat::Json) {
    RunConfig config;
    config.sources = planted_sources();
    config.builtins = std::move(builtins);
    config.format = format;
    return config;
}

TuneConfig planted_tuning() {
    return {fixture("tuning/corpus.json"), fixture("tuning/godclass_template.sod"), fixture("tuning/grid.json")};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("flawlens_cli_test_" + name);
}

}  // namespace

TEST(AnalyzeTest, JsonReportListsBlobWithEvidence) {
    auto run = analyze(planted({"GodClass"}));
    ASSERT_EQ(run.code, exit_code::kSuccess) << run.err;
    auto doc = json::parse(run.out);
    const auto& report = doc["reports"].at(0);
    EXPECT_EQ(report["strategy"], "GodClass");
    ASSERT_EQ(report["suspects"].size(), 1u);
    const auto& blob = report["suspects"][0];
    EXPECT_EQ(blob["id"], "class:Blob");
    EXPECT_EQ(blob["evidence"]["WMC"], 16);
    EXPECT_EQ(blob["evidence"]["ATFD"], 3);
    EXPECT_EQ(blob["evidence"]["TCC"], 0.2);
    EXPECT_TRUE(report["warnings"].is_array());
}

TEST(AnalyzeTest, FailOnSuspects) {
    auto config = planted({"GodClass"});
    config.fail_on_suspects = true;
    EXPECT_EQ(analyze(config).code, exit_code::kSuspectsFound);
    config.sources = {fixture("f1.moo")};
    EXPECT_EQ(analyze(config).code, exit_code::kSuccess);
}

TEST(AnalyzeTest, MalformedSodIsInputErrorWithPosition) {
    RunConfig config;
    config.sources = {fixture("f1.moo")};
    config.strategy_files = {fixture("bad/malformed.sod")};
    auto run = analyze(config);
    EXPECT_EQ(run.code, exit_code::kInputError);
    EXPECT_NE(run.err.find("malformed.sod:2:"), std::string::npos) << run.err;
}

TEST(AnalyzeTest, SourceSyntaxErrorIsInputError) {
    auto path = temp_file("broken.moo");
    std::ofstream(path) << "class A { public var }";
    RunConfig config;
    config.sources = {path.string()};
    config.metrics_only = true;
    auto run = analyze(config);
    EXPECT_EQ(run.code, exit_code::kInputError);
    EXPECT_NE(run.err.find("broken.moo:1:"), std::string::npos) << run.err;
    std::filesystem::remove(path);
}

TEST(AnalyzeTest, ModelErrorsExitThree) {
    for (const char* bad : {"bad/cycle.moo", "bad/duplicate_field.moo"}) {
        RunConfig config;
        config.sources = {fixture(bad)};
        config.builtins = {"all"};
        auto run = analyze(config);
        EXPECT_EQ(run.code, exit_code::kModelError) << bad << ": " << run.err;
        EXPECT_FALSE(run.err.empty());
    }
}

TEST(AnalyzeTest, UsageErrors) {
    RunConfig none;
    none.builtins = {"all"};
    EXPECT_EQ(analyze(none).code, exit_code::kInputError);
    RunConfig no_strategy;
    no_strategy.sources = {fixture("f1.moo")};
    EXPECT_EQ(analyze(no_strategy).code, exit_code::kInputError);
    auto both = planted({"all"});
    both.facts = fixture("f1.json");
    EXPECT_EQ(analyze(both).code, exit_code::kInputError);
    EXPECT_EQ(analyze(planted({"Lack of Facade"})).code, exit_code::kInputError);
    EXPECT_EQ(analyze(planted({"Spaghetti"})).code, exit_code::kInputError);
    auto missing = planted({"all"});
    missing.sources = {fixture("nope.moo")};
    EXPECT_EQ(analyze(missing).code, exit_code::kInputError);
}

TEST(AnalyzeTest, TextAndJsonListSameSuspects) {
    auto json_run = analyze(planted({"all"}));
    auto text_run = analyze(planted({"all"}, OutputFormat::Text));
    ASSERT_EQ(json_run.code, 0);
    ASSERT_EQ(text_run.code, 0);
    std::set<std::string> from_json;
    auto doc = json::parse(json_run.out);
    for (const auto& report : doc["reports"]) {
        for (const auto& s : report["suspects"]) from_json.insert(s["id"].get<std::string>());
    }
    std::set<std::string> from_text;
    std::regex line(R"(^  ((class|method|attr):\S+))");
    std::istringstream lines(text_run.out);
    for (std::string l; std::getline(lines, l);) {
        std::smatch m;
        if (std::regex_search(l, m, line)) from_text.insert(m[1]);
    }
    EXPECT_EQ(from_json, (std::set<std::string>{"class:Blob", "class:Record", "method:Blob.doEverything"}));
    EXPECT_EQ(from_text, from_json);
}

TEST(AnalyzeTest, JsonIsByteStable) {
    EXPECT_EQ(analyze(planted({"all"})).out, analyze(planted({"all"})).out);
}

TEST(AnalyzeTest, SmallSystemWarningsGoToDiagnostics) {
    RunConfig config;
    config.sources = {fixture("f1.moo")};
    config.builtins = {"GodClass"};
    config.format = OutputFormat::Json;
    auto run = analyze(config);
    ASSERT_EQ(run.code, 0);
    auto warnings = json::parse(run.out)["reports"][0]["warnings"];
    EXPECT_EQ(warnings.size(), 2u);
    EXPECT_NE(run.err.find("warning: "), std::string::npos);
    config.small_system_limit = 0;
    EXPECT_TRUE(json::parse(analyze(config).out)["reports"][0]["warnings"].empty());
}

TEST(AnalyzeTest, DumpFactsThenAnalyzeFacts) {
    auto facts = temp_file("facts.json");
    auto config = planted({"all"});
    config.dump_facts = facts.string();
    auto from_sources = analyze(config);
    ASSERT_EQ(from_sources.code, 0) << from_sources.err;
    EXPECT_EQ(load_facts(facts.string()), load_planted());

    RunConfig again;
    again.facts = facts.string();
    again.builtins = {"all"};
    again.format = OutputFormat::Json;
    EXPECT_EQ(analyze(again).out, from_sources.out);
    std::filesystem::remove(facts);
}

TEST(AnalyzeTest, MetricsOnly) {
    RunConfig config;
    config.sources = {fixture("f1.moo")};
    config.metrics_only = true;
    config.format = OutputFormat::Json;
    auto run = analyze(config);
    ASSERT_EQ(run.code, 0) << run.err;
    auto doc = json::parse(run.out);
    EXPECT_EQ(doc["metrics"]["WMC"]["class:A"], 4);
    EXPECT_EQ(doc["metrics"]["TCC"]["class:A"], 1.0);
    EXPECT_EQ(doc["metrics"]["CC"]["method:A.m2"], 2);
    EXPECT_EQ(doc["metrics"].size(), 11u);
    config.format = OutputFormat::Text;
    EXPECT_NE(analyze(config).out.find("WMC"), std::string::npos);
}

TEST(AnalyzeTest, OutputFile) {
    auto path = temp_file("report.json");
    auto config = planted({"GodClass"});
    config.output = path.string();
    auto run = analyze(config);
    ASSERT_EQ(run.code, 0);
    EXPECT_TRUE(run.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(text.str(), analyze(planted({"GodClass"})).out);
    std::filesystem::remove(path);
}

TEST(TuneCommandTest, PrintsWinner) {
    auto run = tune_run(planted_tuning());
    ASSERT_EQ(run.code, exit_code::kSuccess) << run.err;
    EXPECT_NE(run.out.find("best: $p=50%"), std::string::npos) << run.out;
    EXPECT_NE(run.out.find("F1=1.0"), std::string::npos) << run.out;
}

TEST(TuneCommandTest, MissingGridIsInputError) {
    auto config = planted_tuning();
    config.grid = fixture("tuning/missing.json");
    EXPECT_EQ(tune_run(config).code, exit_code::kInputError);
}

TEST(TuneCommandTest, EmptyCorpusMessage) {
    auto config = planted_tuning();
    config.corpus = fixture("tuning/empty_corpus.json");
    auto run = tune_run(config);
    EXPECT_EQ(run.code, exit_code::kInputError);
    EXPECT_NE(run.err.find("empty corpus"), std::string::npos) << run.err;
}

TEST(TuneCommandTest, CapIsEnforced) {
    auto config = planted_tuning();
    config.cap = 2;
    EXPECT_EQ(tune_run(config).code, exit_code::kInputError);
}
