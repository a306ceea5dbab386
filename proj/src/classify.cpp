#include "tcrisk/classify.hpp"

#include "tcrisk/errors.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <stdexcept>
#include <utility>

namespace tcrisk {

namespace {

void require_index_set(const OutcomeSet& s, std::size_t n, const char* name) {
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] >= n) throw PreconditionError(std::string(name) + ": outcome index out of range");
        if (j > 0 && s[j] <= s[j - 1])
            throw PreconditionError(std::string(name) + ": indices must be strictly ascending");
    }
}

void require_disjoint(const OutcomeSet& a, const OutcomeSet& b) {
    OutcomeSet inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    if (!inter.empty()) throw PreconditionError("the two outcome sets must be disjoint");
}

OutcomeSet sorted_union(const OutcomeSet& a, const OutcomeSet& b) {
    OutcomeSet u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

bool mass_fixed(const std::vector<Measure>& gens, const OutcomeSet& s) {
    const Rational first = gens.front().mass(s);
    for (const Measure& g : gens)
        if (g.mass(s) != first) return false;
    return true;
}

/// Constancy of P(num | den) across all generators charging den, decided by
/// exact cross-multiplication (num is a subset of den for every use here).
bool conditional_fixed(const std::vector<Measure>& gens, const OutcomeSet& num,
                       const OutcomeSet& den) {
    bool have = false;
    Rational n0, d0;
    for (const Measure& g : gens) {
        Rational d = g.mass(den);
        if (d == 0) continue;
        Rational n = g.mass(num);
        if (!have) {
            n0 = n;
            d0 = d;
            have = true;
            continue;
        }
        if (n * d0 != n0 * d) return false;
    }
    return true;
}

struct ChainInputs {
    std::size_t z1;           // generator index of the marginal source
    std::size_t z2;           // low conditional source
    std::size_t z3;           // high conditional source
    Rational margin;          // z1's mass on A
    Rational c2, c3;          // the two conditionals P(B|A^c)
};

/// Shared selection logic for both chain orientations. `minimize` picks z1 as
/// the generator attaining the least A-mass, otherwise the largest. Ties on
/// every role go to the lowest generator index.
ChainInputs select_chain_inputs(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b,
                                bool minimize) {
    const std::size_t n = rm.space()->size();
    require_index_set(a, n, "A");
    require_index_set(b, n, "B");
    if (a.empty() || b.empty()) throw PreconditionError("A and B must be nonempty");
    require_disjoint(a, b);
    const auto& gens = rm.generators();
    if (is_polar(a, gens) || is_polar(b, gens))
        throw PreconditionError("A and B must both be non-polar");

    ChainInputs sel{0, 0, 0, Rational(0), Rational(0), Rational(0)};
    bool found = false;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Rational m = gens[i].mass(a);
        if (!found || (minimize ? m < sel.margin : m > sel.margin)) {
            sel.margin = m;
            sel.z1 = i;
            found = true;
        }
    }
    if (minimize && sel.margin == 0)
        throw PreconditionError("the least attained P(A) is zero; the low-side chain needs it positive");
    if (!minimize && sel.margin == 1)
        throw PreconditionError("the largest attained P(A) is one; the high-side chain needs room above");

    // Conditional sources must charge both sigma(A) blocks so the pastes
    // against z1's marginal are well defined.
    const OutcomeSet ac = complement(a, n);
    bool have = false;
    std::size_t lo = 0, hi = 0;
    Rational clo, chi;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Rational ma = gens[i].mass(a);
        Rational mc = gens[i].mass(ac);
        if (ma == 0 || mc == 0) continue;
        Rational c = gens[i].mass(b) / mc;
        if (!have) {
            lo = hi = i;
            clo = chi = c;
            have = true;
            continue;
        }
        if (c < clo) {
            clo = c;
            lo = i;
        }
        if (c > chi) {
            chi = c;
            hi = i;
        }
    }
    if (!have || clo == chi)
        throw PreconditionError("P(B|A^c) does not vary among generators charging both A and A^c");

    if (minimize && clo == 0) {
        // A zero low conditional would starve the final sigma(B) paste of
        // conditional mass on B; take the smallest positive conditional
        // strictly below the maximum instead.
        bool replaced = false;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Rational ma = gens[i].mass(a);
            Rational mc = gens[i].mass(ac);
            if (ma == 0 || mc == 0) continue;
            Rational c = gens[i].mass(b) / mc;
            if (c == 0 || c >= chi) continue;
            if (!replaced || c < clo) {
                clo = c;
                lo = i;
                replaced = true;
            }
        }
        if (!replaced)
            throw PreconditionError(
                "every conditional below the maximum is zero; the low-side chain is unavailable");
    }

    sel.z2 = lo;
    sel.z3 = hi;
    sel.c2 = clo;
    sel.c3 = chi;
    return sel;
}

}  // namespace

std::string to_string(LemmaCase c) {
    switch (c) {
        case LemmaCase::PolarSet: return "PolarSet";
        case LemmaCase::FullRange: return "FullRange";
        case LemmaCase::AllFixed: return "AllFixed";
        case LemmaCase::NoCase: return "NoCase";
    }
    return "?";
}

std::string to_string(ClassTag tag) {
    switch (tag) {
        case ClassTag::OneAtomic: return "OneAtomic";
        case ClassTag::TwoAtomic: return "TwoAtomic";
        case ClassTag::Extremal: return "Extremal";
        case ClassTag::Linear: return "Linear";
        case ClassTag::NotUniversal: return "NotUniversal";
    }
    return "?";
}

std::pair<Rational, Rational> atom_range(const RiskMeasure& rm, std::size_t i) {
    if (i >= rm.space()->size()) throw PreconditionError("atom_range: outcome index out of range");
    Rational lo = rm.generators().front()[i];
    Rational hi = lo;
    for (const Measure& g : rm.generators()) {
        if (g[i] < lo) lo = g[i];
        if (g[i] > hi) hi = g[i];
    }
    return {lo, hi};
}

LemmaCase lemma_case(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b) {
    const std::size_t n = rm.space()->size();
    require_index_set(a, n, "A");
    require_index_set(b, n, "B");
    require_disjoint(a, b);
    const auto& gens = rm.generators();
    const OutcomeSet rest = complement(sorted_union(a, b), n);
    if (is_polar(a, gens) || is_polar(b, gens) || is_polar(rest, gens))
        return LemmaCase::PolarSet;
    auto full_range = [&](const OutcomeSet& s) {
        Rational lo = gens.front().mass(s);
        Rational hi = lo;
        for (const Measure& g : gens) {
            Rational m = g.mass(s);
            if (m < lo) lo = m;
            if (m > hi) hi = m;
        }
        return lo == 0 && hi == 1;
    };
    if (full_range(a) && full_range(b) && full_range(rest)) return LemmaCase::FullRange;
    if (mass_fixed(gens, a) && mass_fixed(gens, b) &&
        conditional_fixed(gens, b, complement(a, n)) &&
        conditional_fixed(gens, a, complement(b, n)))
        return LemmaCase::AllFixed;
    return LemmaCase::NoCase;
}

bool disjoint_identity_check(const Measure& p, const OutcomeSet& a, const OutcomeSet& b) {
    const std::size_t n = p.size();
    require_index_set(a, n, "A");
    require_index_set(b, n, "B");
    require_disjoint(a, b);
    const Rational pac = p.mass(complement(a, n));
    const Rational pbc = p.mass(complement(b, n));
    if (pac == 0 || pbc == 0)
        throw PreconditionError("disjoint_identity_check: a conditioning set has zero mass");
    const Rational p_a_given_bc = p.mass(a) / pbc;  // A is inside B^c
    const Rational p_b_given_ac = p.mass(b) / pac;  // B is inside A^c
    const Rational denom = 1 - p_a_given_bc * p_b_given_ac;
    if (denom == 0) throw PreconditionError("disjoint_identity_check: denominator vanishes");
    return p.mass(a) == p_a_given_bc * (1 - p_b_given_ac) / denom;
}

LemmaChain lemma_chain(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b) {
    ChainInputs sel = select_chain_inputs(rm, a, b, /*minimize=*/true);
    const auto& gens = rm.generators();
    const std::size_t n = rm.space()->size();
    const Partition sigma_a = Partition::two_block(a, n);
    const Partition sigma_b = Partition::two_block(b, n);
    const Measure& z1 = gens[sel.z1];
    const Measure& z2 = gens[sel.z2];
    const Measure& z3 = gens[sel.z3];
    Measure z4 = paste(z2, z1, sigma_a);
    Measure z5 = paste(z3, z1, sigma_a);
    Measure z6 = paste(z4, z5, sigma_b);
    if (!(z6.mass(a) < sel.margin))
        throw std::logic_error("lemma_chain: z6 failed to undercut the minimal P(A)");
    return LemmaChain{
        a,
        b,
        "min",
        {z1, z2, z3, z4, z5, std::move(z6)},
        {"z1: attains the least P(A) among generators",
         "z2: low P(B|A^c) conditional source",
         "z3: high P(B|A^c) conditional source",
         "z4: conditionals of z2 pasted onto z1's sigma(A) marginal",
         "z5: conditionals of z3 pasted onto z1's sigma(A) marginal",
         "z6: conditionals of z4 pasted onto z5's sigma(B) marginal; its P(A) drops below the minimum"},
    };
}

LemmaChain max_side_chain(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b) {
    ChainInputs sel = select_chain_inputs(rm, a, b, /*minimize=*/false);
    const auto& gens = rm.generators();
    const std::size_t n = rm.space()->size();
    const Partition sigma_a = Partition::two_block(a, n);
    const Partition sigma_b = Partition::two_block(b, n);
    const Measure& z1 = gens[sel.z1];
    const Measure& z2 = gens[sel.z2];
    const Measure& z3 = gens[sel.z3];
    // Mirror orientation: the high conditional feeds the sigma(A) paste whose
    // conditionals survive into z6, the low one only sets z6's B-marginal.
    Measure z4 = paste(z3, z1, sigma_a);
    Measure z5 = paste(z2, z1, sigma_a);
    Measure z6 = paste(z4, z5, sigma_b);
    if (!(z6.mass(a) > sel.margin))
        throw std::logic_error("max_side_chain: z6 failed to exceed the maximal P(A)");
    return LemmaChain{
        a,
        b,
        "max",
        {z1, z3, z2, std::move(z4), std::move(z5), std::move(z6)},
        {"z1: attains the largest P(A) among generators",
         "z2: high P(B|A^c) conditional source",
         "z3: low P(B|A^c) conditional source",
         "z4: conditionals of z2 pasted onto z1's sigma(A) marginal",
         "z5: conditionals of z3 pasted onto z1's sigma(A) marginal",
         "z6: conditionals of z4 pasted onto z5's sigma(B) marginal; its P(A) rises above the maximum"},
    };
}

namespace {

void attach_chain(Witness& w, const RiskMeasure& rm) {
    using Builder = LemmaChain (*)(const RiskMeasure&, const OutcomeSet&, const OutcomeSet&);
    const Builder builders[] = {&lemma_chain, &max_side_chain};
    for (Builder build : builders) {
        for (const auto& [x, y] : {std::pair{&w.a, &w.b}, std::pair{&w.b, &w.a}}) {
            try {
                w.chain = build(rm, *x, *y);
                return;
            } catch (const PreconditionError&) {
                // chain unavailable in this orientation; try the next
            }
        }
    }
}

std::optional<Witness> try_pair(const RiskMeasure& rm, const OutcomeSet& a, const OutcomeSet& b) {
    if (lemma_case(rm, a, b) != LemmaCase::NoCase) return std::nullopt;
    for (const OutcomeSet* s : {&a, &b}) {
        Partition pi = Partition::two_block(*s, rm.space()->size());
        RectangleReport report = is_step_consistent(rm, pi);
        if (!report.consistent()) {
            Witness w{a,
                      b,
                      std::move(pi),
                      report.failures.front().first,
                      std::move(report.failures.front().second),
                      std::nullopt};
            attach_chain(w, rm);
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

Witness find_witness(const RiskMeasure& rm) {
    RiskMeasure reduced = reduce_to_vertices(rm);
    const OutcomeSet bset = reduced.non_polar_outcomes();
    // Singleton pairs first: when the classifier falls through to
    // NotUniversal one of them always produces a failure (see README).
    for (std::size_t i = 0; i < bset.size(); ++i)
        for (std::size_t j = i + 1; j < bset.size(); ++j)
            if (auto w = try_pair(reduced, {bset[i]}, {bset[j]})) return *w;
    // Safety net: disjoint unions of non-polar outcomes, in mask order.
    const std::size_t m = bset.size();
    auto to_set = [&](unsigned long mask) {
        OutcomeSet s;
        for (std::size_t k = 0; k < m; ++k)
            if ((mask >> k) & 1UL) s.push_back(bset[k]);
        return s;
    };
    const unsigned long full = (1UL << m);
    for (unsigned long ma = 1; ma < full; ++ma) {
        for (unsigned long mb = ma + 1; mb < full; ++mb) {
            if ((ma & mb) != 0) continue;
            if (std::popcount(ma) == 1 && std::popcount(mb) == 1) continue;
            if (auto w = try_pair(reduced, to_set(ma), to_set(mb))) return *w;
        }
    }
    throw NoWitnessError(
        "find_witness: every disjoint non-polar pair passed both simple-filtration checks, "
        "contradicting the classification of this input as not universally consistent");
}

Classification classify(const RiskMeasure& rm) {
    RiskMeasure reduced = reduce_to_vertices(rm);
    OutcomeSet bset = reduced.non_polar_outcomes();
    Classification out{ClassTag::NotUniversal, bset, std::nullopt, std::nullopt,
                       std::nullopt,           std::nullopt,       std::nullopt, std::nullopt};
    if (bset.size() == 1) {
        out.tag = ClassTag::OneAtomic;
        out.omega1 = bset[0];
        return out;
    }
    if (reduced.generator_count() == 1) {
        out.tag = ClassTag::Linear;
        out.linear_measure = reduced.generators().front();
        return out;
    }
    bool extremal = true;
    for (std::size_t i : bset) {
        if (atom_range(reduced, i).second != 1) {
            extremal = false;
            break;
        }
    }
    if (extremal) {
        out.tag = ClassTag::Extremal;
        return out;
    }
    if (bset.size() == 2) {
        auto [alpha, beta] = atom_range(reduced, bset[0]);
        if (!(alpha < beta) || (alpha == 0 && beta == 1))
            throw std::logic_error("classify: two-atom interval invariant violated");
        out.tag = ClassTag::TwoAtomic;
        out.omega1 = bset[0];
        out.omega2 = bset[1];
        out.alpha = alpha;
        out.beta = beta;
        return out;
    }
    out.tag = ClassTag::NotUniversal;
    out.witness = find_witness(reduced);
    return out;
}

}  // namespace tcrisk
