#include "tcrisk/linear_feasibility.hpp"

#include <set>
#include <stdexcept>

namespace tcrisk {

namespace {

struct FarkasResult {
    bool feasible = false;
    std::vector<Rational> solution;  // over columns, when feasible
    std::vector<Rational> dual;      // over rows, when infeasible: y.A <= 0, y.b > 0
};

/**
 * Finds lambda >= 0 with sum_j lambda_j columns[j] = rhs, or an exact Farkas
 * certificate of infeasibility. Phase-one simplex on a dense rational
 * tableau; Bland's rule (lowest eligible index in, lowest basis index out on
 * ratio ties) guarantees termination.
 */
FarkasResult equality_feasibility(const std::vector<std::vector<Rational>>& columns,
                                  const std::vector<Rational>& rhs) {
    const std::size_t n = rhs.size();
    const std::size_t m = columns.size();
    for (const auto& col : columns) {
        if (col.size() != n) throw std::invalid_argument("feasibility column dimension mismatch");
    }

    // Tableau layout: m structural columns, n artificial columns, rhs last.
    // Rows with negative rhs are negated first so the artificial basis is
    // feasible; `sign` undoes that when reading the dual off the tableau.
    std::vector<std::vector<Rational>> t(n, std::vector<Rational>(m + n + 1, Rational(0)));
    std::vector<int> sign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) t[i][j] = columns[j][i];
        t[i][m + n] = rhs[i];
        if (rhs[i] < 0) {
            sign[i] = -1;
            for (std::size_t j = 0; j < m; ++j) t[i][j] = -t[i][j];
            t[i][m + n] = -t[i][m + n];
        }
        t[i][m + i] = 1;
    }
    std::vector<std::size_t> basis(n);
    for (std::size_t i = 0; i < n; ++i) basis[i] = m + i;

    const auto is_artificial = [&](std::size_t col) { return col >= m; };

    while (true) {
        // Reduced cost of column j under phase-one costs (1 on artificials):
        // r_j = c_j - sum over rows with artificial basis of t[row][j].
        std::size_t enter = m + n;
        for (std::size_t j = 0; j < m + n && enter == m + n; ++j) {
            Rational r = is_artificial(j) ? Rational(1) : Rational(0);
            for (std::size_t i = 0; i < n; ++i) {
                if (is_artificial(basis[i])) r -= t[i][j];
            }
            if (r < 0) enter = j;
        }
        if (enter == m + n) break;

        std::size_t leave = n;
        Rational best_ratio = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i][enter] <= 0) continue;
            const Rational ratio = t[i][m + n] / t[i][enter];
            if (leave == n || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == n) {
            // Phase-one objective is bounded below by zero, so an unbounded
            // pivot means the tableau is corrupt.
            throw std::logic_error("phase-one simplex reported an unbounded direction");
        }

        const Rational pivot = t[leave][enter];
        for (auto& v : t[leave]) v /= pivot;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational factor = t[i][enter];
            for (std::size_t j = 0; j <= m + n; ++j) t[i][j] -= factor * t[leave][j];
        }
        basis[leave] = enter;
    }

    Rational objective = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_artificial(basis[i])) objective += t[i][m + n];
    }

    FarkasResult result;
    if (objective == 0) {
        result.feasible = true;
        result.solution.assign(m, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_artificial(basis[i])) result.solution[basis[i]] = t[i][m + n];
        }
    } else {
        // Simplex multipliers: y' = c_B B^{-1}; B^{-1} sits under the
        // artificial columns because they started as the identity.
        result.dual.assign(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            Rational y = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (is_artificial(basis[k])) y += t[k][m + i];
            }
            result.dual[i] = sign[i] * y;
        }
    }
    return result;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
    return total;
}

}  // namespace

HullCertificate hull_membership(const std::vector<std::vector<Rational>>& points,
                                const std::vector<Rational>& target) {
    const std::size_t d = target.size();
    // Append the convexity row sum(lambda) = 1 so the routine is correct for
    // arbitrary point sets, not just probability vectors.
    std::vector<std::vector<Rational>> columns;
    columns.reserve(points.size());
    for (const auto& p : points) {
        if (p.size() != d) throw std::invalid_argument("hull point dimension mismatch");
        auto col = p;
        col.emplace_back(1);
        columns.push_back(std::move(col));
    }
    std::vector<Rational> rhs = target;
    rhs.emplace_back(1);

    const FarkasResult raw = equality_feasibility(columns, rhs);

    HullCertificate cert;
    if (raw.feasible) {
        cert.inside = true;
        cert.weights = raw.solution;
        Rational weight_sum = 0;
        for (const auto& w : cert.weights) {
            if (w < 0) throw std::logic_error("hull membership produced a negative weight");
            weight_sum += w;
        }
        if (weight_sum != 1) throw std::logic_error("hull membership weights do not sum to 1");
        for (std::size_t i = 0; i < d; ++i) {
            Rational coord = 0;
            for (std::size_t j = 0; j < points.size(); ++j) coord += cert.weights[j] * points[j][i];
            if (coord != target[i]) {
                throw std::logic_error("hull membership weights fail to reproduce the target");
            }
        }
    } else {
        // Farkas dual (y, y0) satisfies <y,p> + y0 <= 0 for all points and
        // <y,target> + y0 > 0, so y alone separates strictly.
        cert.inside = false;
        cert.separator.assign(raw.dual.begin(), raw.dual.begin() + d);
        const Rational at_target = dot(cert.separator, target);
        for (const auto& p : points) {
            if (dot(cert.separator, p) >= at_target) {
                throw std::logic_error("hull separator fails strictness");
            }
        }
    }
    return cert;
}

std::vector<std::size_t> hull_vertex_indices(const std::vector<std::vector<Rational>>& points) {
    std::vector<std::size_t> kept;
    std::set<std::vector<Rational>> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (seen.insert(points[i]).second) kept.push_back(i);
    }
    // Drop any point expressible by the others; one pass suffices because
    // removing a non-vertex never changes the hull.
    for (std::size_t k = 0; k < kept.size();) {
        std::vector<std::vector<Rational>> others;
        others.reserve(kept.size() - 1);
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (j != k) others.push_back(points[kept[j]]);
        }
        if (!others.empty() && hull_membership(others, points[kept[k]]).inside) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(k));
        } else {
            ++k;
        }
    }
    return kept;
}

}  // namespace tcrisk
