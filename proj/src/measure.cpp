#include "tcrisk/measure.hpp"

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

void require_partition_fits(const Partition& pi, const SpacePtr& space) {
    if (pi.outcome_count() != space->size()) {
        throw SpaceMismatchError("partition does not fit the space");
    }
}

}  // namespace

Measure::Measure(SpacePtr space, std::vector<Rational> probabilities)
    : space_(std::move(space)), p_(std::move(probabilities)) {
    if (!space_) throw std::invalid_argument("measure needs a space");
    if (p_.size() != space_->size()) {
        throw std::invalid_argument("measure length does not match the space");
    }
    Rational total = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (p_[i] < 0) throw std::invalid_argument("measure entries must be nonnegative");
        if (p_[i] > 0 && space_->p0(i) == 0) {
            throw std::invalid_argument("measure charges the reference-null outcome '" +
                                        space_->label(i) + "'");
        }
        total += p_[i];
    }
    if (total != 1) throw std::invalid_argument("measure entries must sum to 1");
}

Rational Measure::mass(const OutcomeSet& a) const {
    Rational total = 0;
    for (std::size_t i : a) total += p_[i];
    return total;
}

bool Measure::operator==(const Measure& other) const {
    return *space_ == *other.space_ && p_ == other.p_;
}

Measure reference_measure(const SpacePtr& space) { return Measure(space, space->reference()); }

Position::Position(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), x_(std::move(values)) {
    if (!space_) throw std::invalid_argument("position needs a space");
    if (x_.size() != space_->size()) {
        throw std::invalid_argument("position length does not match the space");
    }
}

Position Position::operator-() const {
    std::vector<Rational> neg(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) neg[i] = -x_[i];
    return Position(space_, std::move(neg));
}

bool Position::operator==(const Position& other) const {
    return *space_ == *other.space_ && x_ == other.x_;
}

Position constant_position(const SpacePtr& space, const Rational& c) {
    return Position(space, std::vector<Rational>(space->size(), c));
}

Rational expectation(const Position& x, const Measure& p) {
    require_same_space(x.space(), p.space());
    Rational total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) total += x[i] * p[i];
    return total;
}

Position conditional_expectation(const Position& x, const Measure& p, const Partition& pi) {
    require_same_space(x.space(), p.space());
    require_partition_fits(pi, x.space());
    std::vector<Rational> out(x.size(), Rational(0));
    for (const auto& block : pi.blocks()) {
        Rational mass = 0;
        Rational sum = 0;
        for (std::size_t i : block) {
            mass += p[i];
            sum += x[i] * p[i];
        }
        if (mass > 0) {
            const Rational value = sum / mass;
            for (std::size_t i : block) out[i] = value;
        }
    }
    return Position(x.space(), std::move(out));
}

bool is_polar(const OutcomeSet& a, const std::vector<Measure>& gens) {
    for (const auto& g : gens) {
        if (g.mass(a) != 0) return false;
    }
    return true;
}

OutcomeSet support_union(const std::vector<Measure>& gens) {
    if (gens.empty()) return {};
    const std::size_t n = gens.front().size();
    OutcomeSet support;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& g : gens) {
            if (g[i] > 0) {
                support.push_back(i);
                break;
            }
        }
    }
    return support;
}

Rational p_esssup(const Position& x, const std::vector<Measure>& gens) {
    if (!gens.empty()) require_same_space(x.space(), gens.front().space());
    const OutcomeSet support = support_union(gens);
    if (support.empty()) {
        throw std::logic_error("every outcome is polar: inconsistent measure family");
    }
    Rational best = x[support.front()];
    for (std::size_t i : support) best = std::max(best, x[i]);
    return best;
}

Position conditional_esssup(const Position& x, const Partition& pi, const Measure& support) {
    require_same_space(x.space(), support.space());
    require_partition_fits(pi, x.space());
    std::vector<Rational> out(x.size(), Rational(0));
    for (const auto& block : pi.blocks()) {
        bool found = false;
        Rational best = 0;
        for (std::size_t i : block) {
            if (support[i] > 0 && (!found || x[i] > best)) {
                best = x[i];
                found = true;
            }
        }
        if (!found) {
            // support-null block: fall back to the plain maximum
            best = x[block.front()];
            for (std::size_t i : block) best = std::max(best, x[i]);
        }
        for (std::size_t i : block) out[i] = best;
    }
    return Position(x.space(), std::move(out));
}

}  // namespace tcrisk
