#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permcorr/matrix.hpp"

namespace permcorr {

enum class TheoremId { Daniels, Pham1, Pham2, Pham3, Main };

const char* to_string(TheoremId id);

// Finite-N snapshot of one theorem's hypotheses. Structural requirements
// (symmetry, hollow diagonal, zero sums) are booleans; asymptotic conditions
// are reported as the ratio the condition constrains, never as a verdict.
// A ratio whose denominator vanishes carries no value ("undefined" in
// reports), never an infinity.
struct ConditionReport {
    TheoremId theorem = TheoremId::Main;
    std::vector<std::pair<std::string, bool>> structural_checks;
    std::vector<std::pair<std::string, std::optional<double>>> ratio_diagnostics;
    std::string advisory;
};

// Off-diagonal grand-mean centering: a'_ij = (a_ij - sum'(a)/(N(N-1))) for
// i != j, zero diagonal. The centering sum runs over the same off-diagonal
// index set the transform keeps.
CoefficientMatrix prime_transform(const CoefficientMatrix& a);

enum class StarSetting { Symmetric, Antisymmetric };

// Row/column-sum correction on top of the prime transform. The symmetric
// setting subtracts (a'_{i+} + a'_{+j})/(N-2) from a'_ij; the antisymmetric
// setting subtracts (a'_{i+} + a'_{+j})/N from the raw a_ij, as defined.
CoefficientMatrix star_transform(const CoefficientMatrix& a, StarSetting setting);

ConditionReport diagnose(const CoefficientMatrix& a, const CoefficientMatrix& b,
                         TheoremId theorem, int max_moment_r = 6);

struct BoundedEntriesScenario {
    ConditionReport pham2;
    ConditionReport pham3;
    ConditionReport main;
};

// Diagnostics for the dense bounded-entry family a_ij = 1 - delta_ij, the
// canonical case where the Pham2/Pham3 ratio conditions degrade with N while
// the main h ratio stays bounded.
BoundedEntriesScenario scenario_bounded_entries(int n);

} // namespace permcorr
