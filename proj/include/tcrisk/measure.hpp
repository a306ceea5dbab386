#pragma once

#include "tcrisk/space.hpp"

#include <vector>

namespace tcrisk {

/**
 * Probability measure on a Space, absolutely continuous with respect to the
 * reference measure: it may charge an outcome only where the reference does.
 */
class Measure {
  public:
    Measure(SpacePtr space, std::vector<Rational> probabilities);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return p_.size(); }
    const Rational& operator[](std::size_t i) const { return p_[i]; }
    const std::vector<Rational>& values() const { return p_; }

    /// Total mass of an index set.
    Rational mass(const OutcomeSet& a) const;

    bool operator==(const Measure& other) const;

  private:
    SpacePtr space_;
    std::vector<Rational> p_;
};

/// The reference measure of a space, viewed as a Measure.
Measure reference_measure(const SpacePtr& space);

/// Bounded random variable (a financial position) on a Space. No constraints
/// beyond matching length; boundedness is automatic on a finite space.
class Position {
  public:
    Position(SpacePtr space, std::vector<Rational> values);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return x_.size(); }
    const Rational& operator[](std::size_t i) const { return x_[i]; }
    const std::vector<Rational>& values() const { return x_; }

    Position operator-() const;
    bool operator==(const Position& other) const;

  private:
    SpacePtr space_;
    std::vector<Rational> x_;
};

Position constant_position(const SpacePtr& space, const Rational& c);

/// E_p[x], exact. Throws SpaceMismatchError when x and p disagree.
Rational expectation(const Position& x, const Measure& p);

/**
 * Conditional expectation of x given the partition, under p.
 *
 * Block-constant result; the value on a block B with p(B) > 0 is the
 * p-average of x over B. Blocks with p(B) = 0 take the convention value 0;
 * callers needing a different null-block rule handle those blocks themselves.
 */
Position conditional_expectation(const Position& x, const Measure& p, const Partition& pi);

/// True when every listed measure assigns zero mass to the set. With a convex
/// generated family, checking generators is exhaustive.
bool is_polar(const OutcomeSet& a, const std::vector<Measure>& gens);

/// Outcomes charged by at least one of the measures, ascending.
OutcomeSet support_union(const std::vector<Measure>& gens);

/**
 * Least constant c such that {x > c} is polar for the family: on a finite
 * space, the maximum of x over non-polar outcomes. When x varies only on
 * polar outcomes the value is still the non-polar maximum (tie-break
 * documented in the README). Throws std::logic_error if every outcome is
 * polar, which valid measures cannot produce.
 */
Rational p_esssup(const Position& x, const std::vector<Measure>& gens);

/**
 * Blockwise essential supremum: on each block, the maximum of x over the
 * outcomes the support measure charges. On blocks the support measure does
 * not charge at all, the plain maximum over the block (documented
 * convention).
 */
Position conditional_esssup(const Position& x, const Partition& pi, const Measure& support);

}  // namespace tcrisk
