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

#include <compare>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "fareylab/common.hpp"

namespace fareylab {

/**
 * \brief Reduced fraction on the extended rational line Q ∪ {∞}.
 *
 * Canonical form: gcd(|num|, den) = 1 and den >= 0 after every construction,
 * zero is (0,1) and the point at infinity is uniquely (1,0). A zero
 * denominator with non-positive numerator is rejected so that equality and
 * ordering stay structural.
 *
 * Field arithmetic (+,-,*,/) is defined for finite values only; the mediant
 * is total. The total order places ∞ above every finite value, which matches
 * the convention that vertex triples list ∞ last.
 */
class Rational {
public:
    Rational() : num_(0), den_(1) {}

    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    // NOLINTNEXTLINE(google-explicit-constructor): integers embed naturally
    Rational(long long n) : num_(n), den_(1) {}
    explicit Rational(const BigInt& n) : num_(n), den_(1) {}

    static const Rational& infinity() {
        static const Rational inf = make_infinity();
        return inf;
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_infinity() const { return den_ == 0; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    /// Largest integer <= value. Finite values only.
    BigInt floor() const {
        require_finite("floor");
        BigInt q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    /// Fractional part in [0,1). Finite values only.
    Rational frac() const { return *this - Rational(floor()); }

    Rational operator-() const {
        require_finite("negation");
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational operator+(const Rational& o) const {
        require_finite("+"), o.require_finite("+");
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        require_finite("-"), o.require_finite("-");
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        require_finite("*"), o.require_finite("*");
        return Rational(num_ * o.num_, den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        require_finite("/"), o.require_finite("/");
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }

    Rational abs() const {
        require_finite("abs");
        Rational r;
        r.num_ = num_ < 0 ? BigInt(-num_) : num_;
        r.den_ = den_;
        return r;
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::strong_ordering operator<=>(const Rational& o) const {
        if (is_infinity() && o.is_infinity()) return std::strong_ordering::equal;
        if (is_infinity()) return std::strong_ordering::greater;
        if (o.is_infinity()) return std::strong_ordering::less;
        BigInt lhs = num_ * o.den_;
        BigInt rhs = o.num_ * den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const {
        if (is_infinity()) return std::numeric_limits<double>::infinity();
        return num_.convert_to<double>() / den_.convert_to<double>();
    }

    /// Serializes as "num/den"; infinity is "1/0".
    std::string str() const { return num_.str() + "/" + den_.str(); }

    /// Parses "num/den" or a bare integer "num". Throws ValidationError.
    static Rational parse(std::string_view text) {
        std::string s(trim(text));
        if (s.empty()) throw ValidationError("empty rational literal");
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(BigInt(s), BigInt(1));
            BigInt n(s.substr(0, slash));
            BigInt d(s.substr(slash + 1));
            return Rational(std::move(n), std::move(d));
        } catch (const std::invalid_argument& e) {
            throw ValidationError("bad rational literal '" + s + "': " + e.what());
        } catch (const std::runtime_error& e) {
            throw ValidationError("bad rational literal '" + s + "': " + e.what());
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static Rational make_infinity() {
        Rational r;
        r.num_ = 1;
        r.den_ = 0;
        return r;
    }

    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        return s;
    }

    void require_finite(const char* op) const {
        if (is_infinity()) throw std::domain_error(std::string("Rational: '") + op + "' needs a finite value");
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (den_ == 0) {
            if (num_ <= 0)
                throw std::invalid_argument("Rational: only 1/0 may carry a zero denominator");
            num_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

/// Farey mediant (p1+p2)/(q1+q2); already reduced whenever the arguments are
/// an adjacent pair, reduced in general by construction.
inline Rational mediant(const Rational& p, const Rational& q) {
    return Rational(p.num() + q.num(), p.den() + q.den());
}

}  // namespace fareylab
