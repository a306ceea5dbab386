#include "tcrisk/space.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tcrisk {

Space::Space(std::vector<std::string> outcomes, std::vector<Rational> reference)
    : outcomes_(std::move(outcomes)), p0_(std::move(reference)) {
    if (outcomes_.empty()) throw std::invalid_argument("space needs at least one outcome");
    if (outcomes_.size() != p0_.size()) {
        throw std::invalid_argument("outcome and reference probability counts differ");
    }
    std::set<std::string> seen;
    for (const auto& label : outcomes_) {
        if (!seen.insert(label).second) {
            throw std::invalid_argument("duplicate outcome label '" + label + "'");
        }
    }
    Rational total = 0;
    bool positive = false;
    for (const auto& p : p0_) {
        if (p < 0) throw std::invalid_argument("reference probabilities must be nonnegative");
        if (p > 0) positive = true;
        total += p;
    }
    if (total != 1) throw std::invalid_argument("reference probabilities must sum to 1");
    if (!positive) throw std::invalid_argument("reference measure must charge some outcome");
}

std::size_t Space::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        if (outcomes_[i] == label) return i;
    }
    throw std::invalid_argument("unknown outcome label '" + label + "'");
}

SpacePtr make_space(std::vector<std::string> outcomes, std::vector<Rational> reference) {
    return std::make_shared<const Space>(std::move(outcomes), std::move(reference));
}

SpacePtr make_uniform_space(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<Rational> p0;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("w" + std::to_string(i + 1));
        p0.emplace_back(1, static_cast<long>(n));
    }
    return make_space(std::move(labels), std::move(p0));
}

Partition::Partition(std::vector<OutcomeSet> blocks, std::size_t n) : blocks_(std::move(blocks)), n_(n) {
    if (n_ == 0) throw std::invalid_argument("partition over an empty space");
    block_of_.assign(n_, blocks_.size());
    for (auto& b : blocks_) {
        if (b.empty()) throw std::invalid_argument("partition block may not be empty");
        std::sort(b.begin(), b.end());
        if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
            throw std::invalid_argument("partition block repeats an outcome");
        }
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const OutcomeSet& x, const OutcomeSet& y) { return x.front() < y.front(); });
    std::size_t covered = 0;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        for (std::size_t i : blocks_[k]) {
            if (i >= n_) throw std::invalid_argument("partition block index out of range");
            if (block_of_[i] != blocks_.size()) {
                throw std::invalid_argument("partition blocks overlap");
            }
            block_of_[i] = k;
            ++covered;
        }
    }
    if (covered != n_) throw std::invalid_argument("partition blocks must cover all outcomes");
}

Partition Partition::trivial(std::size_t n) {
    OutcomeSet all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return Partition({all}, n);
}

Partition Partition::discrete(std::size_t n) {
    std::vector<OutcomeSet> blocks;
    blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
    return Partition(std::move(blocks), n);
}

Partition Partition::two_block(const OutcomeSet& a, std::size_t n) {
    OutcomeSet rest = complement(a, n);
    if (a.empty() || rest.empty()) {
        throw std::invalid_argument("two-block partition needs a nonempty proper subset");
    }
    return Partition({a, rest}, n);
}

bool Partition::refines(const Partition& coarser) const {
    if (coarser.n_ != n_) return false;
    for (const auto& b : blocks_) {
        const std::size_t target = coarser.block_of(b.front());
        for (std::size_t i : b) {
            if (coarser.block_of(i) != target) return false;
        }
    }
    return true;
}

Filtration::Filtration(std::vector<Partition> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2) throw std::invalid_argument("filtration needs at least two levels");
    const std::size_t n = levels_.front().outcome_count();
    if (!levels_.front().is_trivial()) {
        throw std::invalid_argument("filtration must start at the trivial partition");
    }
    if (!levels_.back().is_discrete()) {
        throw std::invalid_argument("filtration must end at the discrete partition");
    }
    for (std::size_t t = 1; t < levels_.size(); ++t) {
        if (levels_[t].outcome_count() != n) {
            throw std::invalid_argument("filtration levels live on different spaces");
        }
        if (!levels_[t].refines(levels_[t - 1])) {
            throw std::invalid_argument("filtration level " + std::to_string(t) +
                                        " does not refine its predecessor");
        }
    }
}

Filtration simple_filtration(const OutcomeSet& a, std::size_t n) {
    return Filtration({Partition::trivial(n), Partition::two_block(a, n), Partition::discrete(n)});
}

OutcomeSet complement(const OutcomeSet& a, std::size_t n) {
    std::vector<bool> in(n, false);
    for (std::size_t i : a) {
        if (i >= n) throw std::invalid_argument("outcome index out of range");
        in[i] = true;
    }
    OutcomeSet rest;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in[i]) rest.push_back(i);
    }
    return rest;
}

std::string set_to_string(const OutcomeSet& a, const Space& space) {
    std::string out = "{";
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k > 0) out += ",";
        out += space.label(a[k]);
    }
    out += "}";
    return out;
}

}  // namespace tcrisk
