/*
   Copyright 2026 The fareylab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "fareylab/group.hpp"
#include "fareylab/minkowski.hpp"

namespace fareylab {

/// Exact count of elements gamma of word length n with gamma.base on the
/// closed arc.
inline std::uint64_t sphere_count_in_arc(unsigned n, const Arc& arc, const Rational& base,
                                         unsigned cap = kSphereCap) {
    std::uint64_t count = 0;
    for_each_sphere_element(
        n,
        [&](const Mat2& m, std::string_view) {
            if (arc.contains(m.apply(base))) ++count;
        },
        cap);
    return count;
}

struct WordLimitRow {
    unsigned n = 0;
    std::uint64_t count = 0;
    Rational ratio;  // count / |Gamma_n|
};

struct WordLimitTable {
    std::vector<WordLimitRow> rows;
    Rational target;  // arc mass under the mbar measure
};

/// The normalized orbit counts S_n / |Gamma_n| for n = 1..n_max together
/// with their limit, the exact arc mass. One tree pass covers all levels.
inline WordLimitTable word_limit_table(const Arc& arc, const Rational& base, unsigned n_max,
                                       unsigned cap = kSphereCap) {
    std::vector<std::uint64_t> counts(n_max + 1, 0);
    for_each_ball_element(
        n_max,
        [&](const Mat2& m, unsigned len) {
            if (arc.contains(m.apply(base))) ++counts[len];
        },
        cap);
    WordLimitTable table;
    table.target = measure_arc(arc);
    table.rows.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n)
        table.rows.push_back({n, counts[n], Rational(counts[n], sphere_size(n))});
    return table;
}

/**
 * \brief Distribution of the word length after n uniform generator steps.
 *
 * The reduced-word length under right multiplication by a uniform generator
 * is a birth-death chain on the 3-regular tree: from 0 it always moves to 1,
 * from m >= 1 it moves up with probability 2/3 and down with 1/3. Masses are
 * exact rationals, supported on m <= n with m = n (mod 2), and the n-step
 * walk distributes the mass of each length class evenly over its sphere.
 */
struct DistanceDistribution {
    unsigned step = 0;
    std::map<unsigned, Rational> mass;

    /// Mass per individual element of word length m.
    Rational per_element_mass(unsigned m) const {
        auto it = mass.find(m);
        if (it == mass.end()) return Rational(0);
        return it->second / Rational(sphere_size(m), 1);
    }
};

inline DistanceDistribution distance_distribution(unsigned n) {
    std::map<unsigned, Rational> cur{{0, Rational(1)}};
    const Rational third(1, 3), two_thirds(2, 3);
    for (unsigned step = 0; step < n; ++step) {
        std::map<unsigned, Rational> next;
        auto add = [&next](unsigned m, const Rational& p) {
            auto [it, inserted] = next.try_emplace(m, p);
            if (!inserted) it->second = it->second + p;
        };
        for (const auto& [m, p] : cur) {
            if (m == 0) {
                add(1, p);
            } else {
                add(m + 1, p * two_thirds);
                add(m - 1, p * third);
            }
        }
        cur = std::move(next);
    }
    return DistanceDistribution{n, std::move(cur)};
}

/**
 * Exact CDF of the n-step walk distribution pushed to the circle from x0:
 * F(t) = sum_m mu_{n,m} #{gamma in Gamma_m : gamma.x0 <= t}. The circle is
 * cut at ∞: orbit points at ∞ count toward total mass but lie above every
 * finite t. Returns one exact value per query point, in input order.
 */
inline std::vector<Rational> convolution_cdf(unsigned n, const Rational& x0,
                                             const std::vector<Rational>& points,
                                             unsigned cap = kSphereCap) {
    for (const Rational& t : points)
        if (t.is_infinity())
            throw std::invalid_argument("convolution_cdf: query points must be finite");
    DistanceDistribution dist = distance_distribution(n);

    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&points](std::size_t i, std::size_t j) { return points[i] < points[j]; });
    std::vector<Rational> sorted;
    sorted.reserve(points.size());
    for (std::size_t i : order) sorted.push_back(points[i]);

    // first_at[m][j] counts elements whose orbit point first satisfies
    // "<= sorted[j]" at index j; prefix sums give the per-sphere counts.
    std::vector<std::vector<std::uint64_t>> first_at(n + 1,
                                                     std::vector<std::uint64_t>(points.size() + 1, 0));
    for_each_ball_element(
        n,
        [&](const Mat2& m, unsigned len) {
            if (dist.mass.find(len) == dist.mass.end()) return;
            Rational y = m.apply(x0);
            if (y.is_infinity()) return;
            auto it = std::lower_bound(sorted.begin(), sorted.end(), y);
            ++first_at[len][static_cast<std::size_t>(it - sorted.begin())];
        },
        cap);

    std::vector<Rational> result(points.size());
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        Rational acc(0);
        for (const auto& [m, p] : dist.mass) {
            std::uint64_t le = 0;
            for (std::size_t i = 0; i <= j; ++i) le += first_at[m][i];
            if (le > 0) acc = acc + p * Rational(le, 1) / Rational(sphere_size(m), 1);
        }
        result[order[j]] = std::move(acc);
    }
    return result;
}

struct StationarityResult {
    Rational lhs;  // averaged mass of the three generator images
    Rational rhs;  // mass of the arc itself
    bool exact_match() const { return lhs == rhs; }
};

/// One-step invariance of the mbar measure under the uniform generator walk:
/// each generator is an involution, so the pullback of an arc is its image.
inline StationarityResult stationarity_check(const Arc& arc) {
    Rational sum(0);
    for (char name : kGeneratorNames) sum = sum + measure_arc(arc.image(generator_matrix(name)));
    return StationarityResult{sum / Rational(3), measure_arc(arc)};
}

}  // namespace fareylab
