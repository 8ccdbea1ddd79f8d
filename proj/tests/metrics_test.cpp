#include "flawlens/errors.hpp"
#include "flawlens/metrics.hpp"
#include "support/oracle.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>

using namespace flawlens;
using namespace flawlens::testing;

namespace {

class FixtureF1 : public ::testing::Test {
protected:
    DesignModel model = load_f1();
};

DesignModel chain() {
    return model_from_source("class A { } class B extends A { } class C extends B { }");
}

}  // namespace

TEST_F(FixtureF1, MethodMetrics) {
    EXPECT_EQ(cc(model, meth("A", "getX")), 1);
    EXPECT_EQ(cc(model, meth("A", "m2")), 2);
    EXPECT_EQ(mloc(model, meth("A", "getX")), 1);
    EXPECT_EQ(mloc(model, meth("A", "m2")), 2);
}

TEST_F(FixtureF1, GoldenClassValues) {
    EXPECT_EQ(wmc(model, cls("A")), 4);
    EXPECT_EQ(wmc(model, cls("B")), 1);
    EXPECT_EQ(wmc(model, cls("C")), 0);
    EXPECT_EQ(dit(model, cls("A")), 0);
    EXPECT_EQ(dit(model, cls("B")), 1);
    EXPECT_EQ(noc(model, cls("A")), 2);
    EXPECT_EQ(noc(model, cls("D")), 0);
    EXPECT_EQ(cbo(model, cls("A")), 0);
    EXPECT_EQ(cbo(model, cls("B")), 1);
    EXPECT_EQ(rfc(model, cls("A")), 3);
    EXPECT_EQ(rfc(model, cls("B")), 2);
    EXPECT_EQ(rfc(model, cls("C")), 0);
    EXPECT_EQ(lcom(model, cls("A")), 0);
    EXPECT_EQ(tcc(model, cls("A")), 1.0);
    EXPECT_EQ(atfd(model, cls("A")), 0);
    EXPECT_EQ(atfd(model, cls("B")), 1);
    EXPECT_EQ(nopa(model, cls("A")), 0);
}

TEST_F(FixtureF1, Tables) {
    auto wmc_table = compute_table(model, Metric::WMC);
    EXPECT_EQ(wmc_table.values,
              (std::map<EntityId, double>{{cls("A"), 4}, {cls("B"), 1}, {cls("C"), 0}, {cls("D"), 1}}));
    auto noc_table = compute_table(model, Metric::NOC);
    EXPECT_EQ(noc_table.values,
              (std::map<EntityId, double>{{cls("A"), 2}, {cls("B"), 0}, {cls("C"), 0}, {cls("D"), 0}}));
    EXPECT_EQ(compute_table(model, Metric::CC).values.size(), 5u);
}

TEST(MetricsTest, EmptyModelGivesEmptyTables) {
    for (auto metric : kAllMetrics) EXPECT_TRUE(compute_table(DesignModel{}, metric).values.empty());
}

TEST(MetricsTest, ChainDepthAndChildren) {
    auto model = chain();
    EXPECT_EQ(dit(model, cls("C")), 2);
    EXPECT_EQ(noc(model, cls("A")), 1);
}

TEST(MetricsTest, PublicAttributeCounts) {
    auto model = model_from_source("class K { public var p: int; private var q: int; }");
    EXPECT_EQ(nopa(model, cls("K")), 1);
}

TEST(MetricsTest, CouplingCountsDistinctOwners) {
    auto model = model_from_source(R"(
class X { public def f() { } public def g() { } }
class Y { public def h() { } }
class Z { public var attr: int; }
class K { public def run(x: X, y: Y, z: Z) { x.f(); x.g(); y.h(); var v: int = z.attr; } }
)");
    EXPECT_EQ(cbo(model, cls("K")), 3);
    EXPECT_EQ(atfd(model, cls("K")), 1);
}

TEST(MetricsTest, CohesionExamples) {
    auto model = model_from_source(R"(
class Two { private var a: int; private var b: int;
  public def f() { this.a = 1; } public def g() { this.b = 1; } }
class Three { private var a: int; private var b: int;
  public def f() { this.a = 1; } public def g() { this.a = 2; } public def h() { this.b = 1; } }
class One { private var a: int; public def f() { this.a = 1; } }
)");
    EXPECT_EQ(lcom(model, cls("Two")), 1);
    EXPECT_DOUBLE_EQ(tcc(model, cls("Three")), 1.0 / 3.0);
    EXPECT_EQ(tcc(model, cls("One")), 1.0);
    EXPECT_EQ(lcom(model, cls("One")), 0);
}

TEST(MetricsTest, ForeignDataThroughPublicAttribute) {
    auto model = model_from_source(R"(
class P { public var q: int; }
class K { public def read(p: P) { var v: int = p.q; } }
)");
    EXPECT_EQ(atfd(model, cls("K")), 1);
}

TEST(MetricsTest, AncestorDataIsNotForeign) {
    auto model = model_from_source(R"(
class P { public var q: int; public def getQ() { return this.q; } }
class K extends P { public def read(p: P) { var v: int = p.q; p.getQ(); } }
)");
    EXPECT_EQ(atfd(model, cls("K")), 0);
}

TEST(MetricsTest, ErrorsOnUnknownWrongKindOrExternal) {
    auto model = model_from_source("class K { public def use(q: Q) { q.ping(); } }");
    EXPECT_THROW(wmc(model, cls("Nope")), MetricError);
    EXPECT_THROW(wmc(model, cls("Q")), MetricError);
    EXPECT_THROW(nopa(model, cls("Q")), MetricError);
    EXPECT_THROW(cc(model, meth("Q", "ping")), MetricError);
    EXPECT_THROW(cc(model, cls("K")), MetricError);
    EXPECT_THROW(compute(model, Metric::WMC, meth("K", "use")), MetricError);
}

TEST(MetricsTest, NamesAndKinds) {
    for (auto metric : kAllMetrics) EXPECT_EQ(parse_metric(to_string(metric)), metric);
    EXPECT_EQ(entity_kind(Metric::CC), TargetKind::Method);
    EXPECT_EQ(entity_kind(Metric::MLOC), TargetKind::Method);
    EXPECT_EQ(entity_kind(Metric::ATFD), TargetKind::Class);
    EXPECT_FALSE(is_integral(Metric::TCC));
    EXPECT_FALSE(parse_metric("LOC").has_value());
}

TEST(MetricsTest, MatchesBruteForceOracle) {
    std::mt19937 rng(424242);
    for (int round = 0; round < 250; ++round) {
        auto model = random_model(rng);
        for (auto metric : kAllMetrics) {
            ASSERT_EQ(compute_table(model, metric), oracle::table(model, metric))
                << "metric " << to_string(metric) << " round " << round;
        }
    }
}

TEST(MetricsTest, RangeAndOrderingInvariants) {
    std::mt19937 rng(99);
    for (int round = 0; round < 200; ++round) {
        auto model = random_model(rng);
        std::size_t total_children = 0;
        std::size_t with_parent = 0;
        for (const auto& c : measurable_entities(model, TargetKind::Class)) {
            auto declared = declared_methods(model, c).size();
            EXPECT_GE(tcc(model, c), 0.0);
            EXPECT_LE(tcc(model, c), 1.0);
            EXPECT_GE(lcom(model, c), 0);
            EXPECT_GE(static_cast<std::size_t>(rfc(model, c)), declared);
            EXPECT_GE(static_cast<std::size_t>(wmc(model, c)), declared);
        }
        for (const auto& [id, c] : model.classes()) {
            if (c.superclass) ++with_parent;
            if (!c.is_external) total_children += noc(model, id);
        }
        // Externals never have declared subclasses counted against them here,
        // so compare against the superclass links pointing at declared classes.
        std::size_t declared_parent_links = 0;
        for (const auto& [id, c] : model.classes()) {
            if (c.superclass && !model.get_class(*c.superclass).is_external) ++declared_parent_links;
        }
        EXPECT_EQ(total_children, declared_parent_links);
        EXPECT_GE(with_parent, declared_parent_links);
    }
}

TEST(MetricsTest, FullySharedAttributeMeansPerfectCohesion) {
    auto model = model_from_source(R"(
class K { private var s: int;
  public def a() { this.s = 1; } public def b() { this.s = 2; } public def c() { this.s = 3; } }
)");
    EXPECT_EQ(lcom(model, cls("K")), 0);
    EXPECT_EQ(tcc(model, cls("K")), 1.0);
}
