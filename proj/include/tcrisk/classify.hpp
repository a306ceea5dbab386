#pragma once

#include "tcrisk/pasting.hpp"
#include "tcrisk/risk_measure.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tcrisk {

/// Which of the three-case alternative holds for a disjoint pair (A, B).
/// NoCase means none does, so the risk measure cannot be consistent for both
/// simple filtrations distinguished by A and by B.
enum class LemmaCase { PolarSet, FullRange, AllFixed, NoCase };

std::string to_string(LemmaCase c);

/// The six-measure contradiction chain built in the proof of the three-case
/// lemma: two pastes along sigma(A) sharing z1's marginal, then a paste along
/// sigma(B) whose A-mass escapes the range the test set attains.
struct LemmaChain {
    OutcomeSet a;
    OutcomeSet b;
    /// "min" when z6(A) undercuts the least attained A-mass, "max" when it
    /// exceeds the largest.
    std::string side;
    std::vector<Measure> z;          // z[0] = z1, ..., z[5] = z6
    std::vector<std::string> roles;  // one annotation per chain element
};

/// Constructive evidence that a risk measure admits no time-consistent
/// extension for some simple filtration.
struct Witness {
    OutcomeSet a;
    OutcomeSet b;
    Partition failing_partition;
    Measure failing_vertex;
    MembershipCertificate certificate;  // outside, with separator
    std::optional<LemmaChain> chain;
};

enum class ClassTag { OneAtomic, TwoAtomic, Extremal, Linear, NotUniversal };

std::string to_string(ClassTag tag);

/**
 * Result of the four-way classification of universally time-consistent
 * coherent risk measures. Exactly the fields relevant to the tag are set:
 * OneAtomic -> omega1; TwoAtomic -> omega1 < omega2 and the attained A-mass
 * interval [alpha, beta] with alpha < beta and [alpha, beta] a proper subset
 * of [0, 1]; Linear -> the single test measure; NotUniversal -> a witness.
 */
struct Classification {
    ClassTag tag;
    OutcomeSet non_polar;
    std::optional<std::size_t> omega1;
    std::optional<std::size_t> omega2;
    std::optional<Rational> alpha;
    std::optional<Rational> beta;
    std::optional<Measure> linear_measure;
    std::optional<Witness> witness;
};

/// (min, max) of g(i) over the generators; by linearity this is the exact
/// range of q(i) over the whole test set.
std::pair<Rational, Rational> atom_range(const RiskMeasure& rm, std::size_t i);

/**
 * Decides which case of the three-case alternative holds for disjoint A, B:
 * PolarSet when one of A, B, (A u B)^c is polar; FullRange when all three
 * masses range over exactly [0, 1]; AllFixed when P(A), P(B), P(B|A^c) and
 * P(A|B^c) are constant across the test set (conditionals compared by exact
 * cross-multiplication wherever defined). We require all three sets to attain
 * both endpoints for FullRange; this reading (under which the alternative's
 * proof goes through) is documented in the README.
 */
LemmaCase lemma_case(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b);

/**
 * Self-test of the measure algebra: for disjoint A, B with defined
 * conditionals, checks P(A) = P(A|B^c)(1 - P(B|A^c)) / (1 - P(A|B^c)P(B|A^c))
 * exactly. Throws PreconditionError when a conditional or the denominator is
 * undefined.
 */
bool disjoint_identity_check(const Measure& p, const OutcomeSet& a, const OutcomeSet& b);

/**
 * The four-way classification. Vertex-reduces internally, so duplicated or
 * redundant generators never change the verdict. Check order: OneAtomic
 * (single non-polar outcome), Linear (single test measure), Extremal (every
 * non-polar outcome attains mass 1), TwoAtomic (two non-polar outcomes,
 * proper interval), otherwise NotUniversal with a witness.
 */
Classification classify(const RiskMeasure& rm);

/**
 * Searches disjoint non-polar pairs (A, B) -- singletons first, then small
 * unions, in a fixed deterministic order -- for a pair with LemmaCase::NoCase,
 * and returns the first simple-filtration partition whose rectangle has a
 * vertex outside the test set, certificate attached. A contradiction chain is
 * attached when either orientation's preconditions hold.
 *
 * Throws NoWitnessError if no pair yields a failure; for a risk measure that
 * really is NotUniversal this would contradict the classification theorem.
 */
Witness find_witness(const RiskMeasure& rm);

/**
 * Builds the min-side contradiction chain for disjoint non-polar A, B:
 * z1 minimizes g(A) (the minimum must be positive); z2, z3 are generators
 * with low/high P(B|A^c); z4 = paste(z2, z1, sigma(A)), z5 = paste(z3, z1,
 * sigma(A)), z6 = paste(z4, z5, sigma(B)); asserts z6(A) < z1(A) exactly.
 * Candidates for z2, z3 are restricted to generators charging both A and A^c
 * so every paste is well defined; when the lowest conditional is 0 (which
 * would starve the final paste) the smallest positive conditional below the
 * maximum is used instead. Throws PreconditionError when no valid choice
 * exists.
 */
LemmaChain lemma_chain(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b);

/**
 * Mirror construction on the top edge: z1 maximizes g(A) (the maximum must be
 * below 1); z4 takes conditionals from the high-P(B|A^c) generator, z5 from
 * the low one, z6 = paste(z4, z5, sigma(B)); asserts z6(A) > z1(A) exactly.
 * The role assignment (high feeds z4) is the orientation that provably forces
 * the overshoot; it was fixed against a brute-force pasting oracle and is
 * asserted exactly at runtime.
 */
LemmaChain max_side_chain(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b);

}  // namespace tcrisk
