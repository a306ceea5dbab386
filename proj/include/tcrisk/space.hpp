#pragma once

#include "tcrisk/rational.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace tcrisk {

/// Sorted set of outcome indices. Used for partition blocks, polar sets and
/// the distinguished sets of simple filtrations.
using OutcomeSet = std::vector<std::size_t>;

/**
 * Finite outcome space with a reference probability measure.
 *
 * The sigma-algebra is always the power set, so atoms coincide with
 * outcomes. The reference probabilities may contain zeros (null outcomes)
 * but must sum to one exactly.
 */
class Space {
  public:
    Space(std::vector<std::string> outcomes, std::vector<Rational> reference);

    std::size_t size() const { return outcomes_.size(); }
    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::string& label(std::size_t i) const { return outcomes_[i]; }
    const std::vector<Rational>& reference() const { return p0_; }
    const Rational& p0(std::size_t i) const { return p0_[i]; }

    /// Index of a label; throws std::invalid_argument if unknown.
    std::size_t index_of(const std::string& label) const;

    bool operator==(const Space& other) const {
        return outcomes_ == other.outcomes_ && p0_ == other.p0_;
    }

  private:
    std::vector<std::string> outcomes_;
    std::vector<Rational> p0_;
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr make_space(std::vector<std::string> outcomes, std::vector<Rational> reference);

/// Convenience: n outcomes labelled w1..wn with the uniform reference measure.
SpacePtr make_uniform_space(std::size_t n);

/**
 * Partition of the outcome set into disjoint nonempty blocks.
 *
 * Canonical form: each block sorted ascending, blocks ordered by their least
 * element, so equality of partitions is plain vector equality.
 */
class Partition {
  public:
    /// Validates and canonicalizes. `n` is the outcome count of the space.
    Partition(std::vector<OutcomeSet> blocks, std::size_t n);

    static Partition trivial(std::size_t n);
    static Partition discrete(std::size_t n);
    /// Two-block partition {a, a^c}; `a` must be a nonempty proper subset.
    static Partition two_block(const OutcomeSet& a, std::size_t n);

    const std::vector<OutcomeSet>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    const OutcomeSet& block(std::size_t k) const { return blocks_[k]; }
    std::size_t outcome_count() const { return n_; }

    /// Index of the block containing outcome i.
    std::size_t block_of(std::size_t i) const { return block_of_[i]; }

    /// True when every block of *this is contained in a block of `coarser`.
    bool refines(const Partition& coarser) const;

    bool is_trivial() const { return blocks_.size() == 1; }
    bool is_discrete() const { return blocks_.size() == n_; }

    bool operator==(const Partition& other) const {
        return n_ == other.n_ && blocks_ == other.blocks_;
    }

  private:
    std::vector<OutcomeSet> blocks_;
    std::vector<std::size_t> block_of_;
    std::size_t n_;
};

/**
 * Increasing information structure: a chain of partitions from the trivial
 * partition down to the discrete one, each level refining the previous.
 */
class Filtration {
  public:
    explicit Filtration(std::vector<Partition> levels);

    std::size_t level_count() const { return levels_.size(); }
    const Partition& level(std::size_t t) const { return levels_[t]; }
    const std::vector<Partition>& levels() const { return levels_; }
    std::size_t outcome_count() const { return levels_.front().outcome_count(); }

    bool operator==(const Filtration& other) const { return levels_ == other.levels_; }

  private:
    std::vector<Partition> levels_;
};

/// The simple filtration distinguished by a set A: trivial, then {A, A^c},
/// then full information. `a` must be a nonempty proper subset.
Filtration simple_filtration(const OutcomeSet& a, std::size_t n);

/// Complement of a sorted index set within {0,..,n-1}.
OutcomeSet complement(const OutcomeSet& a, std::size_t n);

/// String form "{w1,w3}" of an index set under a space's labels.
std::string set_to_string(const OutcomeSet& a, const Space& space);

}  // namespace tcrisk
