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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fareylab/mobius.hpp"

namespace fareylab {

// The Farey group: the subgroup of PSL(2,Z) generated by the three
// involutions below, isomorphic to the free product Z2 * Z2 * Z2. Each
// generator squares to -I, i.e. to the identity projectively.
inline const Mat2& generator_matrix(char name) {
    static const Mat2 ga(1, -2, 1, -1);
    static const Mat2 gb(0, -1, 1, 0);
    static const Mat2 gc(1, -1, 2, -1);
    switch (name) {
        case 'a': return ga;
        case 'b': return gb;
        case 'c': return gc;
        default: throw std::invalid_argument("generator name must be one of a, b, c");
    }
}

inline constexpr std::array<char, 3> kGeneratorNames{'a', 'b', 'c'};

/// Concatenates two reduced words and cancels adjacent equal letters
/// (each generator is an involution). The result is again reduced.
inline std::string reduce_word_concat(std::string_view lhs, std::string_view rhs) {
    std::string out;
    out.reserve(lhs.size() + rhs.size());
    auto push = [&out](char ch) {
        if (!out.empty() && out.back() == ch)
            out.pop_back();
        else
            out.push_back(ch);
    };
    for (char ch : lhs) push(ch);
    for (char ch : rhs) push(ch);
    return out;
}

/**
 * \brief Vertex triple of a tile of the Farey tessellation.
 *
 * Stores the Moebius images of {0, 1, ∞} in increasing order with ∞ last
 * when present. For a tile with three finite vertices the middle vertex is
 * the mediant of the outer two; tiles with an ∞ vertex are the integer
 * strips T(m, m+1, ∞).
 */
struct Tile {
    std::array<Rational, 3> v;

    bool has_infinity() const { return v[2].is_infinity(); }

    bool operator==(const Tile& o) const { return v == o.v; }

    std::string str() const { return "T(" + v[0].str() + "," + v[1].str() + "," + v[2].str() + ")"; }
};

inline Tile tile_of(const Mat2& g) {
    std::array<Rational, 3> v{g.apply(Rational(0)), g.apply(Rational(1)),
                              g.apply(Rational::infinity())};
    // Total order on extended rationals places ∞ above every finite value.
    if (v[1] < v[0]) std::swap(v[0], v[1]);
    if (v[2] < v[1]) std::swap(v[1], v[2]);
    if (v[1] < v[0]) std::swap(v[0], v[1]);
    return Tile{v};
}

namespace detail {

/// True when `cand` is the tile one step closer to T(0,1,∞) than `cur`:
/// a finite tile descends across the edge avoiding its middle vertex, an
/// integer strip T(m,m+1,∞) descends toward the strip containing [0,1].
inline bool is_parent_tile(const Tile& cur, const Tile& cand) {
    if (cur.has_infinity()) {
        if (!cand.has_infinity()) return false;
        const Rational& m = cur.v[0];
        Rational target = m > Rational(0) ? m - Rational(1) : m + Rational(1);
        return cand.v[0] == target;
    }
    const Rational& mid = cur.v[1];
    return !(cand.v[0] == mid || cand.v[1] == mid || cand.v[2] == mid);
}

}  // namespace detail

/**
 * Recovers the unique reduced word of a group element by geometric descent:
 * at each step exactly one generator moves the tile closer to T(0,1,∞),
 * and it is the last letter of the reduced word. Matrices outside the
 * group are detected when the descent stalls, cycles back to the base tile
 * early, or outruns its bit-length budget.
 */
inline std::string word_of(const Mat2& m) {
    static const Tile base = tile_of(Mat2::identity());
    std::string reversed;
    Mat2 g = m;
    // Word length is logarithmic in the entries for generic elements but
    // linear in the strip index for T(m,m+1,∞)-type elements, so the budget
    // combines both scales (magnitude clamped to keep the budget finite).
    BigInt mx = 0;
    for (const BigInt* e : {&m.a(), &m.b(), &m.c(), &m.d()}) {
        BigInt v = *e < 0 ? BigInt(-*e) : *e;
        if (v > mx) mx = v;
    }
    std::uint64_t magnitude =
        mx > 1'000'000'000 ? std::uint64_t{1'000'000'000} : mx.convert_to<std::uint64_t>();
    std::uint64_t budget = 4 * m.bit_size() + 4 * magnitude + 16;
    while (!(g == Mat2::identity())) {
        Tile cur = tile_of(g);
        if (cur == base)
            throw std::invalid_argument("word_of: matrix stabilizes the base tile but is not the identity; not in the Farey group");
        bool moved = false;
        for (char name : kGeneratorNames) {
            Mat2 cand = g * generator_matrix(name);
            if (detail::is_parent_tile(cur, tile_of(cand))) {
                reversed.push_back(name);
                g = std::move(cand);
                moved = true;
                break;
            }
        }
        if (!moved || --budget == 0)
            throw std::invalid_argument("word_of: descent failed; matrix is not in the Farey group");
    }
    return {reversed.rbegin(), reversed.rend()};
}

/**
 * \brief Group element: sign-normalized matrix plus optional reduced word.
 *
 * Elements are immutable. The cached word, when present, never has two
 * equal consecutive letters; products compose caches by cancellation.
 */
class GroupElement {
public:
    GroupElement() : mat_(Mat2::identity()), word_("") {}

    explicit GroupElement(Mat2 m, std::optional<std::string> word = std::nullopt)
        : mat_(std::move(m)), word_(std::move(word)) {}

    static GroupElement identity() { return GroupElement(); }

    static GroupElement generator(char name) {
        return GroupElement(generator_matrix(name), std::string(1, name));
    }

    /// Builds the element of a reduced (or reducible) word over {a,b,c}.
    static GroupElement from_word(std::string_view word) {
        GroupElement g;
        for (char ch : word) g = g * generator(ch);
        return g;
    }

    const Mat2& matrix() const { return mat_; }
    const std::optional<std::string>& cached_word() const { return word_; }

    /// The unique reduced word; recomputed by descent when not cached.
    std::string reduced_word() const { return word_ ? *word_ : word_of(mat_); }

    unsigned word_length() const { return static_cast<unsigned>(reduced_word().size()); }

    GroupElement operator*(const GroupElement& o) const {
        std::optional<std::string> w;
        if (word_ && o.word_) w = reduce_word_concat(*word_, *o.word_);
        return GroupElement(mat_ * o.mat_, std::move(w));
    }

    /// Every generator is an involution, so the inverse word is the reverse.
    GroupElement inverse() const {
        std::optional<std::string> w;
        if (word_) w = std::string(word_->rbegin(), word_->rend());
        return GroupElement(mat_.inverse(), std::move(w));
    }

    Tile tile() const { return tile_of(mat_); }

    bool operator==(const GroupElement& o) const { return mat_ == o.mat_; }

private:
    Mat2 mat_;
    std::optional<std::string> word_;
};

/// |Gamma_n| = 3 * 2^(n-1) for n >= 1; the sphere of radius 0 is {e}.
inline BigInt sphere_size(unsigned n) {
    if (n == 0) return 1;
    return BigInt(3) << (n - 1);
}

namespace detail {

template <class Visit>
void sphere_dfs(const Mat2& m, std::string& word, unsigned depth, unsigned target, Visit&& visit) {
    if (depth == target) {
        visit(m, std::string_view(word));
        return;
    }
    for (char name : kGeneratorNames) {
        if (!word.empty() && word.back() == name) continue;
        word.push_back(name);
        sphere_dfs(m * generator_matrix(name), word, depth + 1, target, visit);
        word.pop_back();
    }
}

template <class Visit>
void ball_dfs(const Mat2& m, char last, unsigned depth, unsigned max_depth, Visit&& visit) {
    visit(m, depth);
    if (depth == max_depth) return;
    for (char name : kGeneratorNames) {
        if (name == last) continue;
        ball_dfs(m * generator_matrix(name), name, depth + 1, max_depth, visit);
    }
}

inline void check_sphere_cap(unsigned n, unsigned cap) {
    if (n > cap)
        throw ResourceLimitError("sphere radius " + std::to_string(n) + " exceeds cap " +
                                 std::to_string(cap));
}

}  // namespace detail

/// Streams every element of word length exactly n, once each, as
/// (matrix, reduced word) in depth-first word order. Matrices are built
/// incrementally, one generator multiplication per tree node.
template <class Visit>
void for_each_sphere_element(unsigned n, Visit&& visit, unsigned cap = kSphereCap) {
    detail::check_sphere_cap(n, cap);
    std::string word;
    word.reserve(n);
    detail::sphere_dfs(Mat2::identity(), word, 0, n, visit);
}

/// Streams every element of word length <= n as (matrix, word length).
template <class Visit>
void for_each_ball_element(unsigned n, Visit&& visit, unsigned cap = kSphereCap) {
    detail::check_sphere_cap(n, cap);
    detail::ball_dfs(Mat2::identity(), '\0', 0, n, visit);
}

inline std::vector<GroupElement> sphere(unsigned n, unsigned cap = kSphereCap) {
    std::vector<GroupElement> out;
    if (n > 0 && n - 1 < 63) out.reserve(std::size_t{3} << (n - 1));
    for_each_sphere_element(
        n, [&out](const Mat2& m, std::string_view w) { out.emplace_back(m, std::string(w)); }, cap);
    return out;
}

}  // namespace fareylab
