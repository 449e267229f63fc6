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

#include <utility>
#include <vector>

#include "fareylab/farey.hpp"
#include "fareylab/mobius.hpp"

namespace fareylab {

/**
 * \brief Exact dyadic value k / 2^n in [0,1].
 *
 * Canonical form has odd k or n = 0, so equality is structural. These are
 * the exact values of Minkowski's question-mark function at rationals.
 */
class Dyadic {
public:
    Dyadic() : num_(0), exp_(0) {}

    Dyadic(BigInt numerator, unsigned exponent) : num_(std::move(numerator)), exp_(exponent) {
        if (num_ < 0 || num_ > (BigInt(1) << exp_))
            throw std::invalid_argument("Dyadic: value must lie in [0,1]");
        while (exp_ > 0 && num_ % 2 == 0) {
            num_ >>= 1;
            --exp_;
        }
    }

    const BigInt& numerator() const { return num_; }
    unsigned exponent() const { return exp_; }

    Rational to_rational() const { return Rational(num_, BigInt(1) << exp_); }

    bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp_ == o.exp_; }

    std::strong_ordering operator<=>(const Dyadic& o) const {
        BigInt lhs = num_ << o.exp_;
        BigInt rhs = o.num_ << exp_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const { return to_rational().str(); }

private:
    BigInt num_;
    unsigned exp_;
};

/**
 * Minkowski's question-mark function ? : [0,1] ∩ Q -> dyadics, by
 * Stern-Brocot descent. The value bracket starts at [0,1]; each Left halves
 * toward the low end, each Right toward the high end, and the mediant takes
 * the midpoint. A term reached after d steps therefore maps to an odd
 * multiple of 2^-(d+1).
 */
inline Dyadic question_mark(const Rational& x) {
    if (x.is_infinity() || x < Rational(0) || x > Rational(1))
        throw std::invalid_argument("question_mark: argument must lie in [0,1]");
    if (x.is_zero()) return Dyadic(BigInt(0), 0);
    if (x == Rational(1)) return Dyadic(BigInt(1), 0);
    Rational lo(0), hi(1);
    BigInt k = 0;
    unsigned e = 0;
    for (;;) {
        Rational mid = mediant(lo, hi);
        if (x == mid) return Dyadic(2 * k + 1, e + 1);
        if (x < mid) {
            hi = std::move(mid);
            k <<= 1;
        } else {
            lo = std::move(mid);
            k <<= 1;
            k += 1;
        }
        ++e;
    }
}

/// Continued-fraction coefficients [a0; a1, ..., ak] of a finite rational,
/// by the Euclidean algorithm. The last coefficient is >= 2 except for
/// integers, which yield the single coefficient a0.
inline std::vector<BigInt> continued_fraction(const Rational& x) {
    if (x.is_infinity()) throw std::invalid_argument("continued_fraction: finite values only");
    std::vector<BigInt> coeffs;
    BigInt num = x.num(), den = x.den();
    BigInt a0 = x.floor();
    coeffs.push_back(a0);
    num -= a0 * den;  // remainder numerator of the fractional part
    while (num != 0) {
        std::swap(num, den);  // invert
        BigInt a = num / den;
        coeffs.push_back(a);
        num -= a * den;
    }
    return coeffs;
}

/**
 * The question-mark function evaluated through the continued-fraction
 * expansion: for x = [0; a1, ..., ak],
 *
 *   ?(x) = 2 * sum_{j=1..k} (-1)^{j+1} 2^{-(a1+...+aj)} .
 *
 * The classical alternating sum needs the leading factor 2 to agree with
 * the Stern-Brocot construction (?(1/2) = 1/2, not 1/4); the value is
 * independent of which of the two continued-fraction spellings is used.
 */
inline Dyadic question_mark_cf(const Rational& x) {
    if (x.is_infinity() || x < Rational(0) || x > Rational(1))
        throw std::invalid_argument("question_mark_cf: argument must lie in [0,1]");
    if (x.is_zero()) return Dyadic(BigInt(0), 0);
    if (x == Rational(1)) return Dyadic(BigInt(1), 0);
    std::vector<BigInt> cf = continued_fraction(x);
    // x in (0,1) so cf = [0; a1, ..., ak] with k >= 1.
    constexpr unsigned kDepthCap = 4'000'000;  // result exponent, hence memory, grows with this
    unsigned total = 0;
    std::vector<unsigned> partial;
    partial.reserve(cf.size() - 1);
    for (std::size_t j = 1; j < cf.size(); ++j) {
        if (cf[j] > kDepthCap - total)
            throw ResourceLimitError("question_mark_cf: continued-fraction coefficient sum exceeds cap " +
                                     std::to_string(kDepthCap));
        total += cf[j].convert_to<unsigned>();
        partial.push_back(total);
    }
    // Numerator of the sum over the common denominator 2^(total-1).
    BigInt acc = 0;
    int sign = 1;
    for (unsigned s : partial) {
        BigInt term = BigInt(1) << (total - s);
        acc += sign > 0 ? term : -term;
        sign = -sign;
    }
    return Dyadic(std::move(acc), total - 1);
}

/// Inverse of the question-mark function on (0,1): descends on the binary
/// digits of d until the mediant hits the preimage exactly.
inline Rational question_mark_inverse(const Dyadic& d) {
    Dyadic zero(BigInt(0), 0), one(BigInt(1), 0);
    if (!(zero < d && d < one))
        throw std::invalid_argument("question_mark_inverse: argument must lie strictly inside (0,1)");
    Rational lo(0), hi(1);
    BigInt k = 0;
    unsigned e = 0;
    for (;;) {
        Dyadic mid(2 * k + 1, e + 1);
        if (d == mid) return mediant(lo, hi);
        if (d < mid)
            hi = mediant(lo, hi);
        else
            lo = mediant(lo, hi);
        k <<= 1;
        if (d > mid) k += 1;
        ++e;
    }
}

namespace detail {
// Exact evaluation becomes astronomically large once the integer part is
// huge; cap it so CLI typos fail fast instead of allocating gigabytes.
inline constexpr long kMbarIntegerCap = 100000;

inline Rational two_pow(long k) {
    if (k >= 0) return Rational(BigInt(1) << static_cast<unsigned>(k), 1);
    return Rational(1, BigInt(1) << static_cast<unsigned>(-k));
}
}  // namespace detail

/**
 * Extension of the question-mark CDF to the whole line, normalized as a
 * probability CDF: for x in [m, m+1),
 *
 *   mbar(x) = (T(m) + ?({x}) * 2^-|m|) / 3 ,
 *
 * where T(m) = sum_{k<m} 2^-|k| has closed form 2^m for m <= 0 and
 * 3 - 2^(1-m) for m >= 1. It increases from 0 at -∞ to 1 at +∞; the query
 * convention is mbar(∞) = 1.
 */
inline Rational mbar(const Rational& x) {
    if (x.is_infinity()) return Rational(1);
    BigInt mf = x.floor();
    if (mf > detail::kMbarIntegerCap || mf < -detail::kMbarIntegerCap)
        throw ResourceLimitError("mbar: |integer part| exceeds cap " +
                                 std::to_string(detail::kMbarIntegerCap));
    long m = mf.convert_to<long>();
    Rational tail = m <= 0 ? detail::two_pow(m) : Rational(3) - detail::two_pow(1 - m);
    Rational scaled = question_mark(x.frac()).to_rational() * detail::two_pow(m < 0 ? m : -m);
    return (tail + scaled) / Rational(3);
}

/**
 * Exact mass of a closed arc under the measure whose CDF is mbar. The point
 * ∞ carries no mass, so an arc through ∞ has mass 1 - mbar(start) + mbar(end)
 * and complementary arcs always sum to exactly 1.
 */
inline Rational measure_arc(const Arc& arc) {
    if (arc.start().is_infinity()) return mbar(arc.end());
    if (arc.end().is_infinity()) return Rational(1) - mbar(arc.start());
    if (arc.start() < arc.end()) return mbar(arc.end()) - mbar(arc.start());
    return Rational(1) - mbar(arc.start()) + mbar(arc.end());
}

}  // namespace fareylab
