#pragma once

#include "tcrisk/linear_feasibility.hpp"
#include "tcrisk/measure.hpp"

#include <optional>
#include <vector>

namespace tcrisk {

/**
 * Coherent risk measure in dual form: a finitely generated closed convex set
 * of test measures. rho(X) is the worst expected loss over the set; by
 * linearity the worst case is always attained at a generator.
 */
class RiskMeasure {
  public:
    RiskMeasure(SpacePtr space, std::vector<Measure> generators);

    const SpacePtr& space() const { return space_; }
    const std::vector<Measure>& generators() const { return gens_; }
    std::size_t generator_count() const { return gens_.size(); }

    /// Outcomes charged by at least one test measure.
    OutcomeSet non_polar_outcomes() const { return support_union(gens_); }

  private:
    SpacePtr space_;
    std::vector<Measure> gens_;
};

/**
 * Exact verdict on whether a measure lies in the test set, with a witness
 * either way: convex weights over the generators, or a separating position y
 * with E_q[y] strictly above every generator's E[y].
 */
struct MembershipCertificate {
    bool inside = false;
    std::vector<Rational> weights;
    std::optional<Position> separator;
};

/// rho(X) = max over the test set of E[-X].
Rational rho(const RiskMeasure& rm, const Position& x);

/**
 * Conditional risk given a partition. On each block charged by some test
 * measure, the worst conditional expected loss over the generators charging
 * it. Blocks polar for the whole test set fall back to the reference
 * measure's conditional expectation (mirroring how the explicit extensions
 * treat null sets), and blocks the reference itself ignores take value 0.
 */
Position conditional_rho(const RiskMeasure& rm, const Position& x, const Partition& pi);

/// Exact membership test of q in the convex hull of the generators.
MembershipCertificate membership(const RiskMeasure& rm, const Measure& q);

/// Re-checks a certificate from scratch. Used by tests and by the CLI when
/// reporting failures; independent of the solver that built the certificate.
bool verify_membership(const RiskMeasure& rm, const Measure& q, const MembershipCertificate& cert);

/// Drops every generator that is a convex combination of the others. The
/// hull, and hence rho, is unchanged.
RiskMeasure reduce_to_vertices(const RiskMeasure& rm);

/**
 * Decides strict monotonicity: X >= Y with X > Y somewhere non-null must
 * strictly lower the risk. Equivalent to every vertex of the test set
 * charging every reference-non-null outcome; a vertex with a zero coordinate
 * is exposed by some position whose risk then ignores small drops at that
 * outcome. The criterion is exercised by a randomized falsifier in the test
 * suite, which builds an explicit violation whenever it answers false.
 * Vertex-reduces internally.
 */
bool is_strictly_monotone(const RiskMeasure& rm);

}  // namespace tcrisk
