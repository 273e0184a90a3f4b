// SPDX-License-Identifier: Apache-2.0
#pragma once

// Formal objects of the optimization pipeline: abstraction levels, programs,
// tool signatures (rewrites and lowerings), pipeline validity, and the
// budget ledger that meters level-agent calls.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coopt/errors.hpp"

namespace coopt {

struct AbstractionLevel {
    int ordinal = 1; // 1 is the highest level of abstraction
    std::string name;

    friend bool operator==(const AbstractionLevel& a, const AbstractionLevel& b) {
        return a.ordinal == b.ordinal;
    }
    friend bool operator<(const AbstractionLevel& a, const AbstractionLevel& b) {
        return a.ordinal < b.ordinal;
    }
    friend bool operator<=(const AbstractionLevel& a, const AbstractionLevel& b) {
        return a.ordinal <= b.ordinal;
    }
};

// An ordered, contiguous set of abstraction levels with ordinals 1..n.
class LevelSet {
public:
    explicit LevelSet(std::vector<std::string> names) {
        if (names.empty())
            throw std::invalid_argument("LevelSet: at least one level required");
        int ordinal = 1;
        for (auto& name : names) {
            if (name.empty())
                throw std::invalid_argument("LevelSet: empty level name");
            for (const auto& existing : levels_)
                if (existing.name == name)
                    throw std::invalid_argument("LevelSet: duplicate level name: " + name);
            levels_.push_back({ordinal++, std::move(name)});
        }
    }

    // The three-level instantiation used throughout: C source, LLVM IR,
    // and assembly.
    static const LevelSet& standard() {
        static const LevelSet set({"source", "ir", "assembly"});
        return set;
    }

    int size() const { return static_cast<int>(levels_.size()); }

    const AbstractionLevel& at(int ordinal) const {
        if (ordinal < 1 || ordinal > size())
            throw std::out_of_range("LevelSet: ordinal out of range");
        return levels_[static_cast<std::size_t>(ordinal - 1)];
    }

    const AbstractionLevel* by_name(std::string_view name) const {
        for (const auto& level : levels_)
            if (level.name == name) return &level;
        return nullptr;
    }

    const AbstractionLevel& first() const { return levels_.front(); }
    const AbstractionLevel& last() const { return levels_.back(); }

    bool contains(const AbstractionLevel& level) const {
        return level.ordinal >= 1 && level.ordinal <= size() &&
               levels_[static_cast<std::size_t>(level.ordinal - 1)].name == level.name;
    }

    auto begin() const { return levels_.begin(); }
    auto end() const { return levels_.end(); }

private:
    std::vector<AbstractionLevel> levels_;
};

// A program text at one abstraction level, with the id of the tool that
// produced it and, once measured, its performance relative to the run's
// original program.
struct Program {
    AbstractionLevel level;
    std::string text;
    std::optional<std::string> provenance;
    std::optional<double> perf_baseline;

    Program(AbstractionLevel lvl, std::string src,
            std::optional<std::string> origin = std::nullopt,
            std::optional<double> baseline = std::nullopt)
        : level(std::move(lvl)), text(std::move(src)),
          provenance(std::move(origin)), perf_baseline(baseline) {
        if (text.empty())
            throw std::invalid_argument("Program: text must be non-empty");
        if (perf_baseline && *perf_baseline <= 0.0)
            throw std::invalid_argument("Program: perf_baseline must be > 0");
    }
};

enum class ToolKind { CompilerComponent, LevelAgent };

enum class ToolClass { Rewrite, Lowering, Invalid };

// A tool moves within a level (rewrite) or down the level order (lowering).
inline ToolClass classify_tool(const AbstractionLevel& domain,
                               const AbstractionLevel& range) {
    if (domain.ordinal == range.ordinal) return ToolClass::Rewrite;
    if (domain.ordinal < range.ordinal) return ToolClass::Lowering;
    return ToolClass::Invalid;
}

// Signature and cost of one callable tool. Level agents always cost one
// budget unit and operate within a single level; compiler components are
// free.
struct ToolDescriptor {
    std::string id;
    ToolKind kind;
    AbstractionLevel domain;
    AbstractionLevel range;
    int cost;

    ToolDescriptor(std::string tool_id, ToolKind tool_kind,
                   AbstractionLevel dom, AbstractionLevel rng)
        : id(std::move(tool_id)), kind(tool_kind),
          domain(std::move(dom)), range(std::move(rng)),
          cost(tool_kind == ToolKind::LevelAgent ? 1 : 0) {
        if (id.empty())
            throw std::invalid_argument("ToolDescriptor: empty id");
        if (classify_tool(domain, range) == ToolClass::Invalid)
            throw std::invalid_argument("ToolDescriptor '" + id +
                                        "': range above domain is invalid");
        if (kind == ToolKind::LevelAgent && domain.ordinal != range.ordinal)
            throw std::invalid_argument("ToolDescriptor '" + id +
                                        "': level agents must be rewrites");
    }

    bool is_rewrite() const { return domain.ordinal == range.ordinal; }
    bool is_lowering() const { return domain.ordinal < range.ordinal; }
};

struct PipelineDefinition {
    std::vector<ToolDescriptor> tools;
    std::vector<std::string> sequence; // tool ids, in execution order

    const ToolDescriptor* find_tool(std::string_view id) const {
        for (const auto& tool : tools)
            if (tool.id == id) return &tool;
        return nullptr;
    }
};

struct PipelineViolation {
    enum class Condition {
        FirstDomain,   // first tool must start at the highest level
        LastRange,     // last tool must end at the lowest level
        Chain,         // adjacent tools must agree on the intermediate level
        ToolDirection, // every tool must be a rewrite or a lowering
        UnknownTool,   // sequence entry not present in the tool set
    };
    Condition condition;
    std::size_t index; // sequence position (pair index for Chain)
    std::string message;
};

struct ValidationResult {
    bool ok = false;
    std::vector<PipelineViolation> violations;
};

// Checks that the sequence forms a complete path from the first level to the
// last. All violations are reported, not just the first.
inline ValidationResult validate_pipeline(const PipelineDefinition& def,
                                          const LevelSet& levels) {
    ValidationResult result;
    auto add = [&](PipelineViolation::Condition c, std::size_t i, std::string msg) {
        result.violations.push_back({c, i, std::move(msg)});
    };

    std::vector<const ToolDescriptor*> resolved;
    for (std::size_t i = 0; i < def.sequence.size(); ++i) {
        const ToolDescriptor* tool = def.find_tool(def.sequence[i]);
        if (!tool)
            add(PipelineViolation::Condition::UnknownTool, i,
                "sequence entry '" + def.sequence[i] + "' not in tool set");
        resolved.push_back(tool);
    }

    if (resolved.empty() || !resolved.front()) {
        add(PipelineViolation::Condition::FirstDomain, 0,
            "sequence does not begin at level '" + levels.first().name + "'");
    } else if (resolved.front()->domain.ordinal != levels.first().ordinal) {
        add(PipelineViolation::Condition::FirstDomain, 0,
            "first tool '" + resolved.front()->id + "' starts at level '" +
                resolved.front()->domain.name + "', expected '" +
                levels.first().name + "'");
    }

    if (resolved.empty() || !resolved.back()) {
        add(PipelineViolation::Condition::LastRange,
            resolved.empty() ? 0 : resolved.size() - 1,
            "sequence does not end at level '" + levels.last().name + "'");
    } else if (resolved.back()->range.ordinal != levels.last().ordinal) {
        add(PipelineViolation::Condition::LastRange, resolved.size() - 1,
            "last tool '" + resolved.back()->id + "' ends at level '" +
                resolved.back()->range.name + "', expected '" +
                levels.last().name + "'");
    }

    for (std::size_t i = 0; i + 1 < resolved.size(); ++i) {
        if (!resolved[i] || !resolved[i + 1]) continue;
        if (resolved[i]->range.ordinal != resolved[i + 1]->domain.ordinal)
            add(PipelineViolation::Condition::Chain, i,
                "tool '" + resolved[i]->id + "' ends at level '" +
                    resolved[i]->range.name + "' but '" + resolved[i + 1]->id +
                    "' starts at level '" + resolved[i + 1]->domain.name + "'");
    }

    for (std::size_t i = 0; i < resolved.size(); ++i) {
        if (!resolved[i]) continue;
        if (classify_tool(resolved[i]->domain, resolved[i]->range) ==
            ToolClass::Invalid)
            add(PipelineViolation::Condition::ToolDirection, i,
                "tool '" + resolved[i]->id + "' is neither a rewrite nor a lowering");
    }

    result.ok = result.violations.empty();
    return result;
}

// Tracks budget consumption. Level-agent calls cost one unit each; compiler
// component calls are recorded but free. Values are immutable: charge
// returns a new ledger.
struct BudgetLedger {
    int total = 0;
    int spent = 0;
    std::map<std::string, int> calls;

    explicit BudgetLedger(int budget_total = 0) : total(budget_total) {
        if (total < 0)
            throw std::invalid_argument("BudgetLedger: total must be >= 0");
    }
};

inline BudgetLedger charge(const BudgetLedger& ledger, const ToolDescriptor& tool) {
    if (ledger.spent + tool.cost > ledger.total)
        throw BudgetExceeded("budget exhausted: cannot charge " +
                             std::to_string(tool.cost) + " unit(s) for '" +
                             tool.id + "' with " +
                             std::to_string(ledger.total - ledger.spent) +
                             " remaining");
    BudgetLedger next = ledger;
    next.spent += tool.cost;
    next.calls[tool.id] += 1;
    return next;
}

// True once no further level-agent call fits in the budget.
inline bool is_exhausted(const BudgetLedger& ledger) {
    return ledger.spent + 1 > ledger.total;
}

} // namespace coopt
