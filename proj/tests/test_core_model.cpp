// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "coopt/model.hpp"

using namespace coopt;

namespace {

const LevelSet& levels() { return LevelSet::standard(); }
const AbstractionLevel& source() { return levels().at(1); }
const AbstractionLevel& ir() { return levels().at(2); }
const AbstractionLevel& assembly() { return levels().at(3); }

ToolDescriptor frontend() {
    return {"frontend", ToolKind::CompilerComponent, source(), ir()};
}
ToolDescriptor middle() {
    return {"middle_end", ToolKind::CompilerComponent, ir(), ir()};
}
ToolDescriptor backend() {
    return {"backend", ToolKind::CompilerComponent, ir(), assembly()};
}
ToolDescriptor source_agent() {
    return {"source_agent", ToolKind::LevelAgent, source(), source()};
}

} // namespace

TEST_CASE("level set is contiguous and totally ordered", "[core-model]") {
    REQUIRE(levels().size() == 3);
    REQUIRE(source().ordinal == 1);
    REQUIRE(assembly().ordinal == 3);
    REQUIRE(source() < ir());
    REQUIRE(ir() < assembly());
    REQUIRE_FALSE(assembly() < source());
    REQUIRE(levels().by_name("ir") != nullptr);
    REQUIRE(levels().by_name("mlir") == nullptr);
    REQUIRE_THROWS_AS(LevelSet({"a", "a"}), std::invalid_argument);
    REQUIRE_THROWS_AS(LevelSet({}), std::invalid_argument);
}

TEST_CASE("program invariants", "[core-model]") {
    REQUIRE_NOTHROW(Program(source(), "int main(){}"));
    REQUIRE_THROWS_AS(Program(source(), ""), std::invalid_argument);
    REQUIRE_THROWS_AS(Program(source(), "x", std::nullopt, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(Program(source(), "x", std::nullopt, -1.0), std::invalid_argument);
    Program p(ir(), "define i32 @main() { ret i32 0 }", "frontend", 1.5);
    REQUIRE(p.provenance == "frontend");
    REQUIRE(p.perf_baseline == 1.5);
}

TEST_CASE("classify_tool matches the level ordering", "[core-model]") {
    REQUIRE(classify_tool(source(), source()) == ToolClass::Rewrite);
    REQUIRE(classify_tool(source(), ir()) == ToolClass::Lowering);
    REQUIRE(classify_tool(assembly(), ir()) == ToolClass::Invalid);
}

TEST_CASE("classify_tool is exhaustive and mutually exclusive", "[core-model]") {
    for (int i = 1; i <= levels().size(); ++i) {
        for (int j = 1; j <= levels().size(); ++j) {
            ToolClass c = classify_tool(levels().at(i), levels().at(j));
            int matches = (c == ToolClass::Rewrite) + (c == ToolClass::Lowering) +
                          (c == ToolClass::Invalid);
            REQUIRE(matches == 1);
            REQUIRE((c == ToolClass::Rewrite) == (i == j));
            REQUIRE((c == ToolClass::Lowering) == (i < j));
            REQUIRE((c == ToolClass::Invalid) == (i > j));
        }
    }
}

TEST_CASE("tool descriptor invariants", "[core-model]") {
    REQUIRE(frontend().cost == 0);
    REQUIRE(source_agent().cost == 1);
    REQUIRE(frontend().is_lowering());
    REQUIRE(middle().is_rewrite());
    // range above domain
    REQUIRE_THROWS_AS(ToolDescriptor("bad", ToolKind::CompilerComponent, assembly(), ir()),
                      std::invalid_argument);
    // level agents must stay within one level
    REQUIRE_THROWS_AS(ToolDescriptor("bad", ToolKind::LevelAgent, source(), ir()),
                      std::invalid_argument);
}

TEST_CASE("validate_pipeline accepts the three-component pipeline", "[core-model]") {
    PipelineDefinition def{{frontend(), middle(), backend()},
                           {"frontend", "middle_end", "backend"}};
    auto result = validate_pipeline(def, levels());
    REQUIRE(result.ok);
    REQUIRE(result.violations.empty());
}

TEST_CASE("validate_pipeline rejects an empty sequence", "[core-model]") {
    PipelineDefinition def{{frontend()}, {}};
    auto result = validate_pipeline(def, levels());
    REQUIRE_FALSE(result.ok);
    REQUIRE(result.violations.size() == 2);
    REQUIRE(result.violations[0].condition == PipelineViolation::Condition::FirstDomain);
    REQUIRE(result.violations[1].condition == PipelineViolation::Condition::LastRange);
}

TEST_CASE("validate_pipeline reports chaining mismatches with their index", "[core-model]") {
    ToolDescriptor skip{"backend_skipping_middle", ToolKind::CompilerComponent,
                        source(), assembly()};
    PipelineDefinition def{{frontend(), skip},
                           {"frontend", "backend_skipping_middle"}};
    auto result = validate_pipeline(def, levels());
    REQUIRE_FALSE(result.ok);
    REQUIRE(result.violations.size() == 1);
    REQUIRE(result.violations[0].condition == PipelineViolation::Condition::Chain);
    REQUIRE(result.violations[0].index == 0);
}

TEST_CASE("validate_pipeline reports unknown tool ids", "[core-model]") {
    PipelineDefinition def{{frontend()}, {"frontend", "ghost"}};
    auto result = validate_pipeline(def, levels());
    REQUIRE_FALSE(result.ok);
    bool found = false;
    for (const auto& v : result.violations)
        if (v.condition == PipelineViolation::Condition::UnknownTool && v.index == 1)
            found = true;
    REQUIRE(found);
}

TEST_CASE("valid pipelines compose from the first to the last level", "[core-model]") {
    // Every randomly built valid pipeline must start at ordinal 1 and end at
    // ordinal n, with adjacent levels agreeing.
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ToolDescriptor> tools;
        std::vector<std::string> seq;
        int at = 1;
        int id = 0;
        while (at < levels().size()) {
            bool rewrite = (rng() % 2) == 0;
            int next = rewrite ? at : at + 1;
            std::string name = "t" + std::to_string(id++);
            tools.push_back({name, ToolKind::CompilerComponent,
                             levels().at(at), levels().at(next)});
            seq.push_back(name);
            at = next;
        }
        PipelineDefinition def{tools, seq};
        auto result = validate_pipeline(def, levels());
        REQUIRE(result.ok);
        REQUIRE(def.find_tool(seq.front())->domain.ordinal == 1);
        REQUIRE(def.find_tool(seq.back())->range.ordinal == levels().size());
    }
}

TEST_CASE("charge spends unit cost for level agents", "[core-model]") {
    BudgetLedger ledger(3);
    ledger.spent = 2;
    auto next = charge(ledger, source_agent());
    REQUIRE(next.spent == 3);
    REQUIRE(next.calls.at("source_agent") == 1);
    REQUIRE(ledger.spent == 2); // input untouched
}

TEST_CASE("compiler components charge nothing even at saturation", "[core-model]") {
    BudgetLedger ledger(3);
    ledger.spent = 3;
    auto next = charge(ledger, frontend());
    REQUIRE(next.spent == 3);
    REQUIRE(next.calls.at("frontend") == 1);
}

TEST_CASE("charging a level agent past the budget throws", "[core-model]") {
    BudgetLedger ledger(3);
    ledger.spent = 3;
    REQUIRE_THROWS_AS(charge(ledger, source_agent()), BudgetExceeded);
}

TEST_CASE("is_exhausted boundary cases", "[core-model]") {
    BudgetLedger zero(0);
    REQUIRE(is_exhausted(zero));

    BudgetLedger almost(18);
    almost.spent = 17;
    REQUIRE_FALSE(is_exhausted(almost));

    almost.spent = 18;
    REQUIRE(is_exhausted(almost));
}

TEST_CASE("zero-cost charges never change spent or exhaustion", "[core-model]") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        int total = static_cast<int>(rng() % 20);
        BudgetLedger ledger(total);
        ledger.spent = static_cast<int>(rng() % (static_cast<unsigned>(total) + 1));
        bool before = is_exhausted(ledger);
        auto after = charge(ledger, rng() % 2 ? frontend() : backend());
        REQUIRE(after.spent == ledger.spent);
        REQUIRE(is_exhausted(after) == before);
    }
}

TEST_CASE("spent always equals the cost-weighted call counts", "[core-model]") {
    // Randomized ledgers: interleave agent and compiler charges, stop when the
    // budget refuses, and check the accounting identity afterwards.
    std::mt19937 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        int total = static_cast<int>(rng() % 6);
        BudgetLedger ledger(total);
        std::vector<ToolDescriptor> tools{frontend(), middle(), backend(),
                                          source_agent()};
        for (int step = 0; step < 12; ++step) {
            const auto& tool = tools[rng() % tools.size()];
            try {
                ledger = charge(ledger, tool);
            } catch (const BudgetExceeded&) {
                REQUIRE(tool.cost > 0);
                REQUIRE(is_exhausted(ledger));
            }
        }
        int weighted = 0;
        for (const auto& [id, count] : ledger.calls) {
            int cost = id == "source_agent" ? 1 : 0;
            weighted += cost * count;
        }
        REQUIRE(ledger.spent == weighted);
        REQUIRE(ledger.spent <= ledger.total);
    }
}
