#pragma once

#include "tcrisk/classify.hpp"

#include <vector>

namespace tcrisk {

/**
 * A time-consistent dynamic extension of a classified risk measure along a
 * filtration. The per-level conditional rule is determined by the class:
 *
 *  - OneAtomic(w1): -x(w1) on the block containing w1; on other blocks the
 *    reference-measure conditional expectation of -x (0 on reference-null
 *    blocks).
 *  - TwoAtomic(w1, w2): when the level separates the two atoms, -x(wi) on the
 *    block containing wi; when it does not, the static value rho(x) on their
 *    common block; reference fallback elsewhere.
 *  - Linear(P1): -E_{P1}[x | block] on blocks P1 charges, reference fallback
 *    on P1-null blocks.
 *  - Extremal: the blockwise maximum of -x over non-polar outcomes; reference
 *    fallback on blocks that are polar for the whole test set.
 *
 * Level 0 always reproduces rho; the last level reproduces -x on every
 * reference-non-null outcome (reference-null outcomes take the convention
 * value 0, invisible to every measure in play).
 */
class DynamicRiskMeasure {
  public:
    /// `cls` must not be NotUniversal; use extend() to classify and build.
    DynamicRiskMeasure(RiskMeasure base, Filtration filtration, Classification cls);

    const RiskMeasure& base() const { return base_; }
    const Filtration& filtration() const { return filtration_; }
    const Classification& classification() const { return class_; }

    /// Blockwise conditional risk of x at a filtration level, exact.
    Position evaluate(std::size_t level, const Position& x) const;

  private:
    RiskMeasure base_;
    Filtration filtration_;
    Classification class_;
};

/// Classifies rm and builds its dynamic extension along f. Throws
/// PreconditionError when the classification is NotUniversal: such a risk
/// measure admits no extension for some simple filtration, and the caller
/// should surface the witness instead.
DynamicRiskMeasure extend(const RiskMeasure& rm, const Filtration& f);

/// max over outcomes of |rho_s(-rho_t(x)) - rho_s(x)| under d's evaluator,
/// for levels s <= t. Zero exactly is the defining property of the extension.
Rational semigroup_residual(const DynamicRiskMeasure& d, const Position& x, std::size_t s,
                            std::size_t t);

/**
 * Entropic risk gamma * ln E_{p0}[exp(-x/gamma)], evaluated in floating point
 * with a log-sum-exp guard. This is the only non-rational computation in the
 * library; everything else is exact. Throws PreconditionError for gamma <= 0.
 */
double entropic_rho(const Position& x, double gamma, const Measure& p0);

/// Conditional entropic risk per block: gamma * ln E_{p0}[exp(-x/gamma) | B],
/// with 0 on p0-null blocks. Takes and returns plain double vectors so the
/// backward recursion can be iterated.
std::vector<double> entropic_conditional(const std::vector<double>& x, double gamma,
                                         const Measure& p0, const Partition& pi);

/**
 * Demonstration that the entropic measure is time consistent for every
 * filtration yet escapes the four-class trichotomy by failing positive
 * homogeneity.
 */
struct EntropicReport {
    double gamma;
    /// rho_t(x) per filtration level, one value per outcome.
    std::vector<std::vector<double>> levels;
    /// max over level pairs s <= t and outcomes of the semigroup defect.
    double max_semigroup_residual;
    /// |rho(2x) - 2 rho(x)| for the supplied position.
    double homogeneity_gap;
};

EntropicReport entropic_consistency_demo(const Filtration& f, double gamma, const Measure& p0,
                                         const Position& x);

}  // namespace tcrisk
