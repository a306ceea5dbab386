#pragma once

#include "tcrisk/rational.hpp"

#include <cstddef>
#include <vector>

namespace tcrisk {

/**
 * Outcome of an exact convex-hull membership query.
 *
 * Inside: `weights` are nonnegative, sum to one, and reproduce the target as
 * a combination of the input points, exactly. Outside: `separator` is a
 * linear functional y with <y, target> strictly greater than <y, p> for every
 * input point p (a Farkas certificate). Both certificates are re-verified
 * before being returned, independently of the pivoting path that found them.
 */
struct HullCertificate {
    bool inside = false;
    std::vector<Rational> weights;
    std::vector<Rational> separator;
};

/**
 * Decides exactly whether `target` lies in the convex hull of `points`.
 *
 * Solved as a rational linear feasibility problem (find lambda >= 0 with
 * sum(lambda) = 1 and sum(lambda_j p_j) = target) by a phase-one simplex
 * with Bland's rule, so it terminates on every input and never touches
 * floating point. All points must share the target's dimension.
 */
HullCertificate hull_membership(const std::vector<std::vector<Rational>>& points,
                                const std::vector<Rational>& target);

/**
 * Indices of a minimal subset of `points` with the same convex hull:
 * repeatedly drops any point inside the hull of the remaining ones.
 * Deterministic: duplicates keep their first occurrence, candidates are
 * examined in ascending index order.
 */
std::vector<std::size_t> hull_vertex_indices(const std::vector<std::vector<Rational>>& points);

}  // namespace tcrisk
