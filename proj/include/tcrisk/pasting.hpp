#pragma once

#include "tcrisk/risk_measure.hpp"

#include <vector>

namespace tcrisk {

/**
 * Pastes two measures across a partition: the result takes its block
 * marginals from `marginal_source` and its within-block conditionals from
 * `conditional_source`. In density form this is the classical
 * Z * E[Z'|F] / E[Z|F] construction.
 *
 * Throws IllDefinedPasteError when the marginal source charges a block the
 * conditional source ignores; the quotient is 0/0 there and we refuse to
 * invent a conditional.
 */
Measure paste(const Measure& conditional_source, const Measure& marginal_source,
              const Partition& pi);

/**
 * Vertices of (the closure of) the set of block-conditional measures
 * {p(.|block) : p in the test set, p(block) > 0}, each returned as a
 * full-length measure supported on the block. Generators with zero mass on
 * the block contribute nothing in the closure limit, so conditioning the
 * charging generators and vertex-reducing is exhaustive.
 *
 * Throws PolarBlockError when no test measure charges the block.
 */
std::vector<Measure> conditional_polytope(const RiskMeasure& rm, const OutcomeSet& block);

/// Vertices of the set of block-mass vectors (g(B_1),...,g(B_k)) over the
/// test set, one entry per partition block.
std::vector<std::vector<Rational>> marginal_polytope(const RiskMeasure& rm, const Partition& pi);

/**
 * All combinations of an extreme marginal vector with extreme per-block
 * conditionals; blocks with zero marginal mass contribute nothing. Every
 * extreme point of the pasting rectangle is among these, and the test set is
 * always contained in their hull (each measure is its own paste).
 */
std::vector<Measure> rectangle_vertices(const RiskMeasure& rm, const Partition& pi);

/// Product over blocks of conditional-vertex counts, times the marginal
/// vertex count: the enumeration size of rectangle_vertices.
unsigned long long rectangle_cost_estimate(const RiskMeasure& rm, const Partition& pi);

/**
 * One consistency check at a single partition. The step is consistent
 * exactly when every rectangle vertex belongs to the test set; failures
 * carry the offending vertex and its separating certificate.
 */
struct RectangleReport {
    Partition partition;
    std::vector<std::vector<Rational>> marginal_vertices;
    /// Per block, the conditional vertices; empty for polar blocks.
    std::vector<std::vector<Measure>> conditional_vertices;
    std::vector<Measure> vertices;
    std::vector<std::pair<Measure, MembershipCertificate>> failures;

    bool consistent() const { return failures.empty(); }
};

RectangleReport is_step_consistent(const RiskMeasure& rm, const Partition& pi);

/// Runs the step check at every level. The risk measure is consistent for
/// the filtration exactly when every level's report is consistent.
std::vector<RectangleReport> is_filtration_consistent(const RiskMeasure& rm, const Filtration& f);

bool all_consistent(const std::vector<RectangleReport>& reports);

/**
 * Recursion defect of the canonical conditional risk maps along a
 * filtration: the largest |rho_s(-rho_t(X)) - rho_s(X)| over adjacent level
 * pairs and outcomes. Zero for every position exactly when the rectangle
 * checks pass at every level; the two routes are kept independent so each
 * can serve as the other's oracle.
 */
Rational recursion_residual(const RiskMeasure& rm, const Position& x, const Filtration& f);

}  // namespace tcrisk
