#include "tcrisk/pasting.hpp"

#include "tcrisk/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <utility>

namespace tcrisk {

namespace {

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
    if (!(*a == *b)) throw SpaceMismatchError(what);
}

void require_block(const OutcomeSet& block, std::size_t n) {
    if (block.empty()) throw PreconditionError("block must be nonempty");
    for (std::size_t j = 0; j < block.size(); ++j) {
        if (block[j] >= n) throw PreconditionError("block index out of range");
        if (j > 0 && block[j] <= block[j - 1])
            throw PreconditionError("block must be strictly ascending");
    }
}

struct RectanglePieces {
    std::vector<std::vector<Rational>> marginal;
    std::vector<std::vector<Measure>> conditional;  // empty on polar blocks
};

RectanglePieces build_pieces(const RiskMeasure& rm, const Partition& pi) {
    RectanglePieces pieces;
    pieces.marginal = marginal_polytope(rm, pi);
    pieces.conditional.resize(pi.block_count());
    for (std::size_t k = 0; k < pi.block_count(); ++k) {
        if (!is_polar(pi.block(k), rm.generators()))
            pieces.conditional[k] = conditional_polytope(rm, pi.block(k));
    }
    return pieces;
}

std::vector<Measure> enumerate_products(const RectanglePieces& pieces, const RiskMeasure& rm,
                                        const Partition& pi) {
    const SpacePtr& sp = rm.space();
    std::vector<Measure> out;
    std::set<std::vector<Rational>> seen;
    for (const auto& m : pieces.marginal) {
        // Only blocks with positive marginal mass need a conditional choice.
        std::vector<std::size_t> active;
        for (std::size_t k = 0; k < pi.block_count(); ++k)
            if (m[k] != 0) active.push_back(k);
        std::vector<std::size_t> choice(active.size(), 0);
        bool done = active.empty();
        while (!done) {
            std::vector<Rational> v(sp->size(), Rational(0));
            for (std::size_t a = 0; a < active.size(); ++a) {
                std::size_t k = active[a];
                const Measure& c = pieces.conditional[k][choice[a]];
                for (std::size_t i : pi.block(k)) v[i] = m[k] * c[i];
            }
            if (seen.insert(v).second) out.emplace_back(sp, v);
            // Odometer over the active blocks, last block fastest.
            std::size_t pos = active.size();
            done = true;
            while (pos-- > 0) {
                if (++choice[pos] < pieces.conditional[active[pos]].size()) {
                    done = false;
                    break;
                }
                choice[pos] = 0;
            }
        }
    }
    return out;
}

}  // namespace

Measure paste(const Measure& conditional_source, const Measure& marginal_source,
              const Partition& pi) {
    require_same_space(conditional_source.space(), marginal_source.space(),
                       "paste: measures live on different spaces");
    if (pi.outcome_count() != conditional_source.size())
        throw SpaceMismatchError("paste: partition does not match the space");
    const SpacePtr& sp = conditional_source.space();
    std::vector<Rational> out(conditional_source.size(), Rational(0));
    for (std::size_t k = 0; k < pi.block_count(); ++k) {
        const OutcomeSet& b = pi.block(k);
        Rational outer = marginal_source.mass(b);
        if (outer == 0) continue;
        Rational inner = conditional_source.mass(b);
        if (inner == 0)
            throw IllDefinedPasteError(
                k, "paste: block " + set_to_string(b, *sp) + " carries marginal mass " +
                       format_rational(outer) + " but the conditional source ignores it");
        for (std::size_t i : b) out[i] = outer * conditional_source[i] / inner;
    }
    return Measure(sp, std::move(out));
}

std::vector<Measure> conditional_polytope(const RiskMeasure& rm, const OutcomeSet& block) {
    require_block(block, rm.space()->size());
    std::vector<std::vector<Rational>> pts;
    for (const Measure& g : rm.generators()) {
        Rational mb = g.mass(block);
        if (mb == 0) continue;
        std::vector<Rational> q(g.size(), Rational(0));
        for (std::size_t i : block) q[i] = g[i] / mb;
        pts.push_back(std::move(q));
    }
    if (pts.empty())
        throw PolarBlockError("conditional polytope requested on polar block " +
                              set_to_string(block, *rm.space()));
    std::vector<Measure> out;
    for (std::size_t j : hull_vertex_indices(pts)) out.emplace_back(rm.space(), pts[j]);
    return out;
}

std::vector<std::vector<Rational>> marginal_polytope(const RiskMeasure& rm, const Partition& pi) {
    if (pi.outcome_count() != rm.space()->size())
        throw SpaceMismatchError("marginal_polytope: partition does not match the space");
    std::vector<std::vector<Rational>> pts;
    for (const Measure& g : rm.generators()) {
        std::vector<Rational> v;
        v.reserve(pi.block_count());
        for (const OutcomeSet& b : pi.blocks()) v.push_back(g.mass(b));
        pts.push_back(std::move(v));
    }
    std::vector<std::vector<Rational>> out;
    for (std::size_t j : hull_vertex_indices(pts)) out.push_back(pts[j]);
    return out;
}

std::vector<Measure> rectangle_vertices(const RiskMeasure& rm, const Partition& pi) {
    return enumerate_products(build_pieces(rm, pi), rm, pi);
}

unsigned long long rectangle_cost_estimate(const RiskMeasure& rm, const Partition& pi) {
    RectanglePieces pieces = build_pieces(rm, pi);
    unsigned long long total = pieces.marginal.size();
    constexpr auto cap = std::numeric_limits<unsigned long long>::max();
    for (const auto& c : pieces.conditional) {
        if (c.empty()) continue;
        if (total > cap / c.size()) return cap;
        total *= c.size();
    }
    return total;
}

RectangleReport is_step_consistent(const RiskMeasure& rm, const Partition& pi) {
    RectangleReport report{pi, {}, {}, {}, {}};
    RectanglePieces pieces = build_pieces(rm, pi);
    report.marginal_vertices = pieces.marginal;
    report.conditional_vertices = pieces.conditional;
    report.vertices = enumerate_products(pieces, rm, pi);
    for (const Measure& v : report.vertices) {
        MembershipCertificate cert = membership(rm, v);
        if (!cert.inside) report.failures.emplace_back(v, std::move(cert));
    }
    return report;
}

std::vector<RectangleReport> is_filtration_consistent(const RiskMeasure& rm,
                                                      const Filtration& f) {
    if (f.outcome_count() != rm.space()->size())
        throw SpaceMismatchError("is_filtration_consistent: filtration does not match the space");
    std::vector<RectangleReport> reports;
    reports.reserve(f.level_count());
    for (const Partition& pi : f.levels()) reports.push_back(is_step_consistent(rm, pi));
    return reports;
}

bool all_consistent(const std::vector<RectangleReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const RectangleReport& r) { return r.consistent(); });
}

Rational recursion_residual(const RiskMeasure& rm, const Position& x, const Filtration& f) {
    require_same_space(x.space(), rm.space(), "recursion_residual: position on a different space");
    if (f.outcome_count() != rm.space()->size())
        throw SpaceMismatchError("recursion_residual: filtration does not match the space");
    Rational worst(0);
    for (std::size_t t = 1; t < f.level_count(); ++t) {
        Position inner = conditional_rho(rm, x, f.level(t));
        Position lhs = conditional_rho(rm, -inner, f.level(t - 1));
        Position rhs = conditional_rho(rm, x, f.level(t - 1));
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            Rational d = lhs[i] - rhs[i];
            if (d < 0) d = -d;
            if (d > worst) worst = d;
        }
    }
    return worst;
}

}  // namespace tcrisk
