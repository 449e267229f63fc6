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

#include <optional>
#include <string>
#include <vector>

#include "fareylab/rational.hpp"

namespace fareylab {

/**
 * \brief Level-n mediant-interleaved sequence on [0,1].
 *
 * Level 0 is (0, 1); each level inserts the mediant between every pair of
 * consecutive terms, so level n holds 2^n + 1 strictly increasing reduced
 * fractions and consecutive terms a/b < c/d always satisfy bc - ad = 1.
 * This is the Stern-Brocot refinement of [0,1], not the classical
 * denominator-bounded Farey sequence.
 */
struct FareySequence {
    unsigned level = 0;
    std::vector<Rational> terms;
};

inline FareySequence farey_sequence(unsigned n, unsigned level_cap = kFareyLevelCap) {
    if (n > level_cap)
        throw ResourceLimitError("farey level " + std::to_string(n) +
                                 " exceeds cap " + std::to_string(level_cap));
    FareySequence seq;
    seq.level = n;
    seq.terms = {Rational(0), Rational(1)};
    seq.terms.reserve((std::size_t{1} << n) + 1);
    for (unsigned lvl = 0; lvl < n; ++lvl) {
        std::vector<Rational> next;
        next.reserve(2 * seq.terms.size() - 1);
        for (std::size_t i = 0; i + 1 < seq.terms.size(); ++i) {
            next.push_back(seq.terms[i]);
            next.push_back(mediant(seq.terms[i], seq.terms[i + 1]));
        }
        next.push_back(seq.terms.back());
        seq.terms = std::move(next);
    }
    return seq;
}

enum class Step : char { Left = 'L', Right = 'R' };

/// Left/Right descent through mediants; the empty path denotes the root
/// mediant 1/2 of the bracket (0,1).
using DescentPath = std::vector<Step>;

inline std::string path_str(const DescentPath& path) {
    std::string s;
    s.reserve(path.size());
    for (Step st : path) s.push_back(static_cast<char>(st));
    return s;
}

/// The unique descent from bracket (0,1) whose final mediant equals x.
/// Requires 0 < x < 1; terminates for every rational.
inline DescentPath stern_brocot_path(const Rational& x) {
    if (x.is_infinity() || x <= Rational(0) || x >= Rational(1))
        throw std::invalid_argument("stern_brocot_path: argument must lie strictly inside (0,1)");
    DescentPath path;
    Rational lo(0), hi(1);
    for (;;) {
        Rational mid = mediant(lo, hi);
        if (x == mid) return path;
        if (x < mid) {
            path.push_back(Step::Left);
            hi = std::move(mid);
        } else {
            path.push_back(Step::Right);
            lo = std::move(mid);
        }
    }
}

/**
 * The least n such that p and q are consecutive in the level-n sequence, or
 * nullopt when bc - ad != 1 (with p = a/b, q = c/d). Runs the bracket
 * descent instead of materializing sequences, so levels in the hundreds
 * stay cheap. Requires 0 <= p < q <= 1.
 */
inline std::optional<unsigned> farey_pair_level(const Rational& p, const Rational& q) {
    if (p.is_infinity() || q.is_infinity() || p < Rational(0) || q > Rational(1) || !(p < q))
        throw std::invalid_argument("farey_pair_level: need 0 <= p < q <= 1");
    if (p.den() * q.num() - p.num() * q.den() != 1) return std::nullopt;
    Rational lo(0), hi(1);
    unsigned level = 0;
    while (!(lo == p && hi == q)) {
        Rational mid = mediant(lo, hi);
        if (q <= mid)
            hi = std::move(mid);
        else
            lo = std::move(mid);
        ++level;
    }
    return level;
}

}  // namespace fareylab
