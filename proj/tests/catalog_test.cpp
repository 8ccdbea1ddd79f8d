#include "flawlens/catalog.hpp"
#include "flawlens/errors.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace flawlens;
using namespace flawlens::testing;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

const SuspectReport& report_named(const std::vector<SuspectReport>& reports, const std::string& name) {
    for (const auto& r : reports) {
        if (r.strategy == name) return r;
    }
    throw std::runtime_error("no report " + name);
}

// Worked out by hand from tests/fixtures/planted. DIT and NOC are 0 everywhere.
struct PlantedRow {
    const char* cls;
    double wmc, nopa, cbo, rfc, lcom, tcc, atfd;
};

const PlantedRow kPlantedTable[] = {
    // class        WMC NOPA CBO RFC LCOM  TCC        ATFD
    {"Blob",        16, 0,   3,  7,  6,    0.2,       3},
    {"Record",      0,  3,   0,  0,  0,    1.0,       0},
    {"Account",     4,  0,   0,  3,  1,    1.0 / 3.0, 0},
    {"Customer",    3,  0,   0,  3,  1,    1.0 / 3.0, 0},
    {"Logger",      2,  0,   0,  2,  1,    0.0,       0},
    {"Timer",       2,  0,   0,  2,  1,    0.0,       0},
    {"Cache",       3,  0,   1,  4,  3,    0.0,       1},
    {"Coordinator", 5,  0,   2,  5,  1,    1.0 / 3.0, 2},
    {"Report",      2,  0,   1,  2,  1,    0.0,       1},
    {"Main",        1,  0,   3,  5,  0,    1.0,       0},
};

}  // namespace

TEST(RegistryTest, ContainsWholeTaxonomy) {
    const auto& registry = builtin_registry();
    EXPECT_EQ(registry.size(), 14u);
    const auto& god = find_flaw("God class");
    EXPECT_EQ(god.provenance, Provenance::PaperSpecified);
    EXPECT_EQ(god.level, FlawLevel::Class);
    const auto& facade = find_flaw("Lack of Facade");
    EXPECT_FALSE(facade.builtin_strategy.has_value());
    EXPECT_EQ(facade.provenance, Provenance::RegistryOnly);
    EXPECT_EQ(facade.level, FlawLevel::MicroDesign);
    EXPECT_EQ(find_flaw("Misplaced class").level, FlawLevel::Subsystem);
}

TEST(RegistryTest, ExactlyThreeStrategiesMatchingTheirLevel) {
    int with_strategy = 0;
    for (const auto& entry : builtin_registry()) {
        if (!entry.builtin_strategy) continue;
        ++with_strategy;
        auto expected = entry.level == FlawLevel::Method ? TargetKind::Method : TargetKind::Class;
        EXPECT_EQ(entry.builtin_strategy->target_kind, expected) << entry.flaw_name;
        EXPECT_NE(entry.provenance, Provenance::RegistryOnly);
    }
    EXPECT_EQ(with_strategy, 3);
    EXPECT_EQ(find_flaw("DataClass").provenance, Provenance::ArtifactDefined);
    EXPECT_EQ(find_flaw("GodMethod").provenance, Provenance::ArtifactDefined);
}

TEST(RegistryTest, GodClassPrintsTheLiteratureFormula) {
    EXPECT_EQ(to_sod(find_flaw("GodClass").builtin_strategy->expr),
              "(WMC, TopValues(50%)) and (ATFD, HigherThan(1)) and (TCC, BottomValues(50%))");
}

TEST(RegistryTest, ShippedSodFileMatchesEmbeddedBuiltins) {
    auto text = read_file(std::string(FLAWLENS_DATA_DIR) + "/builtin.sod");
    EXPECT_EQ(text, builtin_sod());
    auto parsed = parse_strategies(text);
    ASSERT_EQ(parsed.size(), 3u);
    for (const auto& s : parsed) EXPECT_EQ(*find_flaw(s.name).builtin_strategy, s);
}

TEST(RegistryTest, UnknownNameIsNameError) {
    EXPECT_THROW(find_flaw("Spaghetti"), NameError);
    EXPECT_THROW(detect_all(load_f1(), {"Spaghetti"}), NameError);
}

TEST(DetectAllTest, RegistryOnlyFlawHasNoStrategy) {
    EXPECT_THROW(detect_all(load_f1(), {"Misplaced class"}), NoStrategyError);
}

TEST(DetectAllTest, GodClassOnFixtureF1IsEmpty) {
    auto reports = detect_all(load_f1(), {"GodClass"});
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_TRUE(reports[0].suspects.empty());
}

TEST(DetectAllTest, SelectionOrderIsKept) {
    auto reports = detect_all(load_f1(), {"DataClass", "God class"});
    ASSERT_EQ(reports.size(), 2u);
    EXPECT_EQ(reports[0].strategy, "DataClass");
    EXPECT_EQ(reports[1].strategy, "GodClass");
}

TEST(PlantedCorpusTest, HandComputedMetricTable) {
    auto model = load_planted();
    auto measured = measurable_entities(model, TargetKind::Class);
    EXPECT_EQ(measured.size(), std::size(kPlantedTable));
    for (const auto& row : kPlantedTable) {
        SCOPED_TRACE(row.cls);
        auto c = cls(row.cls);
        EXPECT_EQ(wmc(model, c), row.wmc);
        EXPECT_EQ(nopa(model, c), row.nopa);
        EXPECT_EQ(cbo(model, c), row.cbo);
        EXPECT_EQ(rfc(model, c), row.rfc);
        EXPECT_EQ(lcom(model, c), row.lcom);
        EXPECT_DOUBLE_EQ(tcc(model, c), row.tcc);
        EXPECT_EQ(atfd(model, c), row.atfd);
        EXPECT_EQ(dit(model, c), 0);
        EXPECT_EQ(noc(model, c), 0);
    }
    EXPECT_EQ(cc(model, meth("Blob", "doEverything")), 10);
    EXPECT_EQ(mloc(model, meth("Blob", "doEverything")), 23);
}

TEST(PlantedCorpusTest, BuiltinsFindExactlyThePlantedFlaws) {
    auto reports = detect_all(load_planted(), {"all-builtin"});
    ASSERT_EQ(reports.size(), 3u);
    EXPECT_EQ(report_named(reports, "GodClass").suspects, std::set<EntityId>{cls("Blob")});
    EXPECT_EQ(report_named(reports, "DataClass").suspects, std::set<EntityId>{cls("Record")});
    EXPECT_EQ(report_named(reports, "GodMethod").suspects, std::set<EntityId>{meth("Blob", "doEverything")});
}

TEST(PlantedCorpusTest, ControlsNeverSuspected) {
    const std::set<std::string> controls{"Logger", "Timer", "Cache", "Coordinator", "Report", "Main"};
    for (const auto& report : detect_all(load_planted(), {"all"})) {
        for (const auto& id : report.suspects) {
            std::string owner(id.owner_name().value_or(id.qualified_name()));
            EXPECT_FALSE(controls.count(owner)) << report.strategy << " flagged " << id.str();
        }
    }
}
