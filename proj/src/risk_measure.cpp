#include "tcrisk/risk_measure.hpp"

#include "tcrisk/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcrisk {

namespace {

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return;
    if (a && b && *a == *b) return;
    throw SpaceMismatchError("values live on different spaces");
}

std::vector<std::vector<Rational>> generator_vectors(const RiskMeasure& rm) {
    std::vector<std::vector<Rational>> vectors;
    vectors.reserve(rm.generator_count());
    for (const auto& g : rm.generators()) vectors.push_back(g.values());
    return vectors;
}

}  // namespace

RiskMeasure::RiskMeasure(SpacePtr space, std::vector<Measure> generators)
    : space_(std::move(space)), gens_(std::move(generators)) {
    if (!space_) throw std::invalid_argument("risk measure needs a space");
    if (gens_.empty()) throw std::invalid_argument("risk measure needs at least one generator");
    for (const auto& g : gens_) require_same_space(space_, g.space());
}

Rational rho(const RiskMeasure& rm, const Position& x) {
    require_same_space(rm.space(), x.space());
    const Position loss = -x;
    Rational best = expectation(loss, rm.generators().front());
    for (std::size_t j = 1; j < rm.generator_count(); ++j) {
        best = std::max(best, expectation(loss, rm.generators()[j]));
    }
    return best;
}

Position conditional_rho(const RiskMeasure& rm, const Position& x, const Partition& pi) {
    require_same_space(rm.space(), x.space());
    if (pi.outcome_count() != rm.space()->size()) {
        throw SpaceMismatchError("partition does not fit the space");
    }
    const Position loss = -x;
    const Measure p0 = reference_measure(rm.space());
    const Position fallback = -conditional_expectation(x, p0, pi);
    std::vector<Rational> out(x.size(), Rational(0));
    for (const auto& block : pi.blocks()) {
        bool charged = false;
        Rational best = 0;
        for (const auto& g : rm.generators()) {
            Rational mass = 0;
            Rational sum = 0;
            for (std::size_t i : block) {
                mass += g[i];
                sum += loss[i] * g[i];
            }
            if (mass == 0) continue;
            const Rational value = sum / mass;
            if (!charged || value > best) best = value;
            charged = true;
        }
        for (std::size_t i : block) out[i] = charged ? best : fallback[i];
    }
    return Position(x.space(), std::move(out));
}

MembershipCertificate membership(const RiskMeasure& rm, const Measure& q) {
    require_same_space(rm.space(), q.space());
    const HullCertificate hull = hull_membership(generator_vectors(rm), q.values());
    MembershipCertificate cert;
    cert.inside = hull.inside;
    if (hull.inside) {
        cert.weights = hull.weights;
    } else {
        cert.separator = Position(rm.space(), hull.separator);
    }
    return cert;
}

bool verify_membership(const RiskMeasure& rm, const Measure& q, const MembershipCertificate& cert) {
    if (cert.inside) {
        if (cert.weights.size() != rm.generator_count()) return false;
        Rational weight_sum = 0;
        for (const auto& w : cert.weights) {
            if (w < 0) return false;
            weight_sum += w;
        }
        if (weight_sum != 1) return false;
        for (std::size_t i = 0; i < q.size(); ++i) {
            Rational coord = 0;
            for (std::size_t j = 0; j < rm.generator_count(); ++j) {
                coord += cert.weights[j] * rm.generators()[j][i];
            }
            if (coord != q[i]) return false;
        }
        return true;
    }
    if (!cert.separator) return false;
    const Rational at_q = expectation(*cert.separator, q);
    for (const auto& g : rm.generators()) {
        if (expectation(*cert.separator, g) >= at_q) return false;
    }
    return true;
}

RiskMeasure reduce_to_vertices(const RiskMeasure& rm) {
    const auto kept = hull_vertex_indices(generator_vectors(rm));
    std::vector<Measure> vertices;
    vertices.reserve(kept.size());
    for (std::size_t j : kept) vertices.push_back(rm.generators()[j]);
    return RiskMeasure(rm.space(), std::move(vertices));
}

bool is_strictly_monotone(const RiskMeasure& rm) {
    const RiskMeasure reduced = reduce_to_vertices(rm);
    for (const auto& g : reduced.generators()) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (rm.space()->p0(i) > 0 && g[i] == 0) return false;
        }
    }
    return true;
}

}  // namespace tcrisk
