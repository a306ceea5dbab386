#pragma once

#include "tcrisk/classify.hpp"

#include <array>
#include <string>
#include <vector>

namespace tcrisk {

struct ScenePoint {
    std::string label;
    /// (P(A), P(B), P((A u B)^c)): nonnegative, sums to one exactly.
    std::array<Rational, 3> bary;
};

struct ScenePolygon {
    std::string label;
    /// Indices into SimplexScene::points, in convex boundary order.
    std::vector<std::size_t> points;
};

struct SceneSegment {
    std::string label;
    std::size_t from;
    std::size_t to;
};

/**
 * A barycentric scene over the three-block split (A, B, rest): the projected
 * generators with their hull, the sigma(A)-rectangle's projected vertices
 * with their hull, and (when a contradiction chain exists) the chain points
 * z1..z6 with the two construction segments feeding the final paste.
 */
struct SimplexScene {
    OutcomeSet a;
    OutcomeSet b;
    OutcomeSet rest;
    std::array<std::string, 3> corner_labels;
    std::vector<ScenePoint> points;
    std::vector<ScenePolygon> polygons;
    std::vector<SceneSegment> segments;
};

/// Projects rm onto the (P(a), P(b), P(rest)) triangle. Requires a, b
/// disjoint and nonempty with a u b a proper subset of the outcome set.
/// Coinciding projections share one scene point whose label lists all names.
SimplexScene project(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b);

/**
 * Deterministic standalone SVG (600x520 canvas). Barycentric triples map
 * affinely onto the triangle with corners A=(300,35), B=(40,485),
 * rest=(560,485); coordinates are rounded half-up to two decimals in exact
 * rational arithmetic, so identical scenes render byte-identically on every
 * platform.
 */
std::string render_svg(const SimplexScene& scene);

/// CSV of the scene's points: header `label,pA,pB,pRest`, rationals as
/// `num/den` in lowest terms.
std::string render_csv(const SimplexScene& scene);

}  // namespace tcrisk
