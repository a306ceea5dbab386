#include "tcrisk/extensions.hpp"

#include "tcrisk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace tcrisk {

namespace {

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
    if (!(*a == *b)) throw SpaceMismatchError(what);
}

}  // namespace

DynamicRiskMeasure::DynamicRiskMeasure(RiskMeasure base, Filtration filtration, Classification cls)
    : base_(std::move(base)), filtration_(std::move(filtration)), class_(std::move(cls)) {
    if (class_.tag == ClassTag::NotUniversal)
        throw PreconditionError(
            "DynamicRiskMeasure: a NotUniversal risk measure has no extension for some simple "
            "filtration");
    if (filtration_.outcome_count() != base_.space()->size())
        throw SpaceMismatchError("DynamicRiskMeasure: filtration does not match the space");
}

Position DynamicRiskMeasure::evaluate(std::size_t level, const Position& x) const {
    if (level >= filtration_.level_count())
        throw PreconditionError("evaluate: filtration level out of range");
    require_same_space(x.space(), base_.space(), "evaluate: position on a different space");
    const Partition& pi = filtration_.level(level);
    const SpacePtr& sp = base_.space();
    // Reference fallback: -E_{P0}[x | block], which is 0 on reference-null
    // blocks by the conditional-expectation convention.
    const Position fallback = -conditional_expectation(x, reference_measure(sp), pi);
    std::vector<Rational> v = fallback.values();
    auto set_block = [&](std::size_t block_index, const Rational& value) {
        for (std::size_t i : pi.block(block_index)) v[i] = value;
    };
    switch (class_.tag) {
        case ClassTag::OneAtomic: {
            const std::size_t w1 = *class_.omega1;
            set_block(pi.block_of(w1), -x[w1]);
            break;
        }
        case ClassTag::TwoAtomic: {
            const std::size_t w1 = *class_.omega1;
            const std::size_t w2 = *class_.omega2;
            if (pi.block_of(w1) == pi.block_of(w2)) {
                set_block(pi.block_of(w1), rho(base_, x));
            } else {
                set_block(pi.block_of(w1), -x[w1]);
                set_block(pi.block_of(w2), -x[w2]);
            }
            break;
        }
        case ClassTag::Linear: {
            const Measure& p1 = *class_.linear_measure;
            const Position cond = conditional_expectation(x, p1, pi);
            for (std::size_t k = 0; k < pi.block_count(); ++k)
                if (p1.mass(pi.block(k)) > 0) set_block(k, -cond[pi.block(k).front()]);
            break;
        }
        case ClassTag::Extremal: {
            for (std::size_t k = 0; k < pi.block_count(); ++k) {
                bool charged = false;
                Rational best;
                for (std::size_t i : pi.block(k)) {
                    if (!std::binary_search(class_.non_polar.begin(), class_.non_polar.end(), i))
                        continue;
                    if (!charged || -x[i] > best) best = -x[i];
                    charged = true;
                }
                if (charged) set_block(k, best);
            }
            break;
        }
        case ClassTag::NotUniversal:
            throw std::logic_error("evaluate: unreachable class");
    }
    return Position(sp, std::move(v));
}

DynamicRiskMeasure extend(const RiskMeasure& rm, const Filtration& f) {
    Classification cls = classify(rm);
    if (cls.tag == ClassTag::NotUniversal)
        throw PreconditionError(
            "extend: the risk measure is not universally time consistent; no extension exists "
            "for the witnessed simple filtration");
    return DynamicRiskMeasure(reduce_to_vertices(rm), f, std::move(cls));
}

Rational semigroup_residual(const DynamicRiskMeasure& d, const Position& x, std::size_t s,
                            std::size_t t) {
    if (t >= d.filtration().level_count() || s > t)
        throw PreconditionError("semigroup_residual: levels must satisfy s <= t < level count");
    const Position inner = d.evaluate(t, x);
    const Position lhs = d.evaluate(s, -inner);
    const Position rhs = d.evaluate(s, x);
    Rational worst(0);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        Rational diff = lhs[i] - rhs[i];
        if (diff < 0) diff = -diff;
        if (diff > worst) worst = diff;
    }
    return worst;
}

double entropic_rho(const Position& x, double gamma, const Measure& p0) {
    require_same_space(x.space(), p0.space(), "entropic_rho: position on a different space");
    if (!(gamma > 0)) throw PreconditionError("entropic_rho: gamma must be positive");
    std::vector<double> xd(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xd[i] = to_double(x[i]);
    const Partition trivial = Partition::trivial(x.size());
    return entropic_conditional(xd, gamma, p0, trivial).front();
}

std::vector<double> entropic_conditional(const std::vector<double>& x, double gamma,
                                         const Measure& p0, const Partition& pi) {
    if (!(gamma > 0)) throw PreconditionError("entropic_conditional: gamma must be positive");
    if (x.size() != p0.size() || pi.outcome_count() != p0.size())
        throw SpaceMismatchError("entropic_conditional: sizes do not match");
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t k = 0; k < pi.block_count(); ++k) {
        const OutcomeSet& block = pi.block(k);
        const Rational block_mass = p0.mass(block);
        if (block_mass == 0) continue;  // invisible block: convention value 0
        // gamma * ln( sum_B p0 e^{-x/gamma} / p0(B) ), log-sum-exp guarded.
        double peak = 0.0;
        bool first = true;
        for (std::size_t i : block) {
            if (p0[i] == 0) continue;
            const double a = -x[i] / gamma;
            if (first || a > peak) peak = a;
            first = false;
        }
        double sum = 0.0;
        for (std::size_t i : block) {
            if (p0[i] == 0) continue;
            sum += to_double(p0[i]) * std::exp(-x[i] / gamma - peak);
        }
        const double value = gamma * (peak + std::log(sum / to_double(block_mass)));
        for (std::size_t i : block) out[i] = value;
    }
    return out;
}

EntropicReport entropic_consistency_demo(const Filtration& f, double gamma, const Measure& p0,
                                         const Position& x) {
    if (!(gamma > 0))
        throw PreconditionError("entropic_consistency_demo: gamma must be positive");
    require_same_space(x.space(), p0.space(), "entropic_consistency_demo: space mismatch");
    if (f.outcome_count() != p0.size())
        throw SpaceMismatchError("entropic_consistency_demo: filtration does not match the space");
    std::vector<double> xd(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xd[i] = to_double(x[i]);

    EntropicReport report{gamma, {}, 0.0, 0.0};
    for (const Partition& pi : f.levels())
        report.levels.push_back(entropic_conditional(xd, gamma, p0, pi));

    for (std::size_t t = 0; t < f.level_count(); ++t) {
        std::vector<double> negated(report.levels[t]);
        for (double& v : negated) v = -v;
        for (std::size_t s = 0; s <= t; ++s) {
            const std::vector<double> lhs = entropic_conditional(negated, gamma, p0, f.level(s));
            for (std::size_t i = 0; i < lhs.size(); ++i) {
                const double diff = std::fabs(lhs[i] - report.levels[s][i]);
                if (diff > report.max_semigroup_residual) report.max_semigroup_residual = diff;
            }
        }
    }

    std::vector<Rational> doubled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) doubled[i] = 2 * x[i];
    const double two_x = entropic_rho(Position(x.space(), std::move(doubled)), gamma, p0);
    report.homogeneity_gap = std::fabs(two_x - 2.0 * entropic_rho(x, gamma, p0));
    return report;
}

}  // namespace tcrisk
