#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tracat {

/// Severity of a validation issue. Structural issues mean the tables are
/// malformed (wrong dimensions, dangling ids, missing entries) and axiom
/// checking was not meaningful; axiom issues mean a law failed on a witness.
enum class Severity { structural, axiom };

struct Issue {
    Severity severity;
    std::string rule;     // short label, e.g. "associativity", "TR9", "(iii)"
    std::string witness;  // rendered witness tuple

    friend bool operator==(const Issue&, const Issue&) = default;
};

/// Accumulated result of a validator. Issues appear in canonical scan order,
/// so the first issue for a rule is the lexicographically smallest witness.
struct ValidationReport {
    std::vector<Issue> issues;

    bool ok() const { return issues.empty(); }

    bool structural_ok() const {
        for (const auto& i : issues)
            if (i.severity == Severity::structural) return false;
        return true;
    }

    void add(Severity sev, std::string rule, std::string witness) {
        issues.push_back({sev, std::move(rule), std::move(witness)});
    }

    void add_structural(std::string rule, std::string witness) {
        add(Severity::structural, std::move(rule), std::move(witness));
    }

    void add_axiom(std::string rule, std::string witness) {
        add(Severity::axiom, std::move(rule), std::move(witness));
    }

    void merge(const ValidationReport& other) {
        issues.insert(issues.end(), other.issues.begin(), other.issues.end());
    }

    /// True if some issue carries the given rule label.
    bool has_rule(std::string_view rule) const {
        for (const auto& i : issues)
            if (i.rule == rule) return true;
        return false;
    }

    std::size_t count_rule(std::string_view rule) const {
        std::size_t n = 0;
        for (const auto& i : issues)
            if (i.rule == rule) ++n;
        return n;
    }

    std::string to_string() const {
        if (issues.empty()) return "ok\n";
        std::string out;
        for (const auto& i : issues) {
            out += (i.severity == Severity::structural) ? "structural " : "axiom      ";
            out += i.rule;
            out += ": ";
            out += i.witness;
            out += '\n';
        }
        return out;
    }
};

/// Thrown by constructive operations handed input that fails validation.
struct MathError : std::runtime_error {
    ValidationReport report;
    explicit MathError(const std::string& what, ValidationReport rep = {})
        : std::runtime_error(what), report(std::move(rep)) {}
};

/// Thrown when malformed data is encountered while building structures.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration exceeds its search budget.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Node/time limits for backtracking searches. A "node" is one attempted
/// assignment of a value to a search variable.
struct Budget {
    std::uint64_t max_nodes = 50'000'000;
    std::uint64_t max_seconds = 0;  // 0 = no wall-clock limit
};

namespace detail {

/// Mutable counter threaded through a search; throws when the budget is hit.
struct SearchCounter {
    const Budget& budget;
    std::uint64_t nodes = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void tick() {
        if (++nodes > budget.max_nodes)
            throw BudgetExceeded("search budget exceeded after " +
                                 std::to_string(budget.max_nodes) + " nodes");
        if (budget.max_seconds != 0 && (nodes & 0x3ff) == 0) {
            auto elapsed = std::chrono::steady_clock::now() - start;
            if (elapsed > std::chrono::seconds(budget.max_seconds))
                throw BudgetExceeded("search time budget exceeded");
        }
    }
};

}  // namespace detail

}  // namespace tracat
