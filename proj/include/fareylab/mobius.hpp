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

#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "fareylab/rational.hpp"

namespace fareylab {

/**
 * \brief Integer 2x2 matrix of determinant one, canonical up to sign.
 *
 * Represents an element of PSL(2,Z). The sign is normalized so that the
 * bottom row is lexicographically positive: the matrix is negated unless
 * c > 0 or (c == 0 and d > 0). This makes equality, ordering and hashing of
 * projective matrices structural.
 */
class Mat2 {
public:
    Mat2() : a_(1), b_(0), c_(0), d_(1) {}

    Mat2(BigInt a, BigInt b, BigInt c, BigInt d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if (a_ * d_ - b_ * c_ != 1)
            throw std::invalid_argument("Mat2: determinant must be 1");
        normalize_sign();
    }

    static const Mat2& identity() {
        static const Mat2 id;
        return id;
    }

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    const BigInt& d() const { return d_; }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        r.a_ = a_ * o.a_ + b_ * o.c_;
        r.b_ = a_ * o.b_ + b_ * o.d_;
        r.c_ = c_ * o.a_ + d_ * o.c_;
        r.d_ = c_ * o.b_ + d_ * o.d_;
        r.normalize_sign();
        return r;
    }

    /// In PSL(2,Z) the inverse of [[a,b],[c,d]] is [[d,-b],[-c,a]].
    Mat2 inverse() const {
        Mat2 r;
        r.a_ = d_;
        r.b_ = -b_;
        r.c_ = -c_;
        r.d_ = a_;
        r.normalize_sign();
        return r;
    }

    /// Moebius action on the extended rational line. The image of a reduced
    /// fraction under a determinant-one integer matrix is already reduced;
    /// a vanishing denominator maps to ∞.
    Rational apply(const Rational& x) const {
        BigInt num = a_ * x.num() + b_ * x.den();
        BigInt den = c_ * x.num() + d_ * x.den();
        if (den == 0) return Rational::infinity();
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rational(std::move(num), std::move(den));
    }

    bool operator==(const Mat2& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }

    bool operator<(const Mat2& o) const {
        return std::tie(a_, b_, c_, d_) < std::tie(o.a_, o.b_, o.c_, o.d_);
    }

    /// Total size in bits of the four entries; used to budget descents.
    unsigned long bit_size() const {
        auto bits = [](const BigInt& v) {
            return v == 0 ? 1ul : static_cast<unsigned long>(boost::multiprecision::msb(v < 0 ? BigInt(-v) : v)) + 1;
        };
        return bits(a_) + bits(b_) + bits(c_) + bits(d_);
    }

    std::string str() const {
        return "[[" + a_.str() + "," + b_.str() + "],[" + c_.str() + "," + d_.str() + "]]";
    }

private:
    void normalize_sign() {
        if (c_ < 0 || (c_ == 0 && d_ < 0)) {
            a_ = -a_;
            b_ = -b_;
            c_ = -c_;
            d_ = -d_;
        }
    }

    BigInt a_, b_, c_, d_;
};

/**
 * \brief Closed oriented arc on the circle Q ∪ {∞}.
 *
 * The arc runs from start to end in the increasing-real direction, wrapping
 * through ∞ when end < start or when an endpoint is ∞ itself. Degenerate
 * (empty or full-circle) arcs are not representable; callers decompose.
 */
class Arc {
public:
    Arc(Rational start, Rational end) : start_(std::move(start)), end_(std::move(end)) {
        if (start_ == end_) throw std::invalid_argument("Arc: endpoints must differ");
    }

    const Rational& start() const { return start_; }
    const Rational& end() const { return end_; }

    bool wraps() const {
        return start_.is_infinity() || end_.is_infinity() || end_ < start_;
    }

    /// Closed-arc membership, both endpoints included.
    bool contains(const Rational& x) const {
        if (start_.is_infinity()) return x.is_infinity() || x <= end_;
        if (end_.is_infinity()) return x.is_infinity() || x >= start_;
        if (start_ < end_) return !x.is_infinity() && start_ <= x && x <= end_;
        // wraps through ∞
        return x.is_infinity() || x >= start_ || x <= end_;
    }

    /// Image under a Moebius map; determinant one preserves the circular
    /// orientation, so mapping the endpoints maps the arc.
    Arc image(const Mat2& g) const { return Arc(g.apply(start_), g.apply(end_)); }

    bool operator==(const Arc& o) const { return start_ == o.start_ && end_ == o.end_; }

    std::string str() const { return start_.str() + ".." + end_.str(); }

    /// Parses "start..end" with rational endpoints.
    static Arc parse(std::string_view text) {
        auto pos = text.find("..");
        if (pos == std::string_view::npos)
            throw ValidationError("bad arc literal (expected start..end): '" + std::string(text) + "'");
        return Arc(Rational::parse(text.substr(0, pos)), Rational::parse(text.substr(pos + 2)));
    }

private:
    Rational start_;
    Rational end_;
};

inline Arc arc_image(const Mat2& g, const Arc& a) { return a.image(g); }
inline bool arc_contains(const Arc& a, const Rational& x) { return a.contains(x); }

}  // namespace fareylab
