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
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fareylab/minkowski.hpp"

using namespace fareylab;

namespace {

Rational rat(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

// Index oracle: the value of the question-mark function at the (k+1)-th
// term of the level-n sequence is k/2^n, straight from the construction.
Dyadic index_oracle(const FareySequence& f, std::size_t term_index) {
    return Dyadic(BigInt(term_index), f.level);
}

}  // namespace

TEST_CASE("dyadic canonical form and ordering") {
    CHECK(Dyadic(BigInt(2), 2) == Dyadic(BigInt(1), 1));
    CHECK(Dyadic(BigInt(0), 5) == Dyadic(BigInt(0), 0));
    CHECK(Dyadic(BigInt(1), 2) < Dyadic(BigInt(1), 1));
    CHECK(Dyadic(BigInt(3), 3).to_rational() == rat(3, 8));
    CHECK_THROWS_AS(Dyadic(BigInt(9), 3), std::invalid_argument);
}

TEST_CASE("question mark spot values") {
    CHECK(question_mark(rat(0, 1)) == Dyadic(BigInt(0), 0));
    CHECK(question_mark(rat(1, 1)) == Dyadic(BigInt(1), 0));
    CHECK(question_mark(rat(1, 2)) == Dyadic(BigInt(1), 1));
    CHECK(question_mark(rat(1, 3)) == Dyadic(BigInt(1), 2));
    CHECK(question_mark(rat(2, 5)) == Dyadic(BigInt(3), 3));
    CHECK_THROWS_AS(question_mark(rat(3, 2)), std::invalid_argument);
}

TEST_CASE("question mark matches the index oracle on the whole level-10 sequence") {
    FareySequence f = farey_sequence(10);
    for (std::size_t k = 0; k < f.terms.size(); ++k) {
        REQUIRE(question_mark(f.terms[k]) == index_oracle(f, k));
    }
}

TEST_CASE("continued-fraction evaluation agrees with the descent exactly") {
    CHECK(question_mark_cf(rat(1, 2)) == Dyadic(BigInt(1), 1));
    CHECK(question_mark_cf(rat(1, 3)) == Dyadic(BigInt(1), 2));
    CHECK(question_mark_cf(rat(1, 1)) == Dyadic(BigInt(1), 0));
    FareySequence f = farey_sequence(10);
    for (const Rational& x : f.terms) REQUIRE(question_mark_cf(x) == question_mark(x));
}

TEST_CASE("midpoint law: the mediant maps to the dyadic midpoint") {
    for (unsigned n = 0; n <= 10; ++n) {
        FareySequence f = farey_sequence(n);
        for (std::size_t i = 0; i + 1 < f.terms.size(); ++i) {
            Rational lhs = question_mark(mediant(f.terms[i], f.terms[i + 1])).to_rational();
            Rational rhs = (question_mark(f.terms[i]).to_rational() +
                            question_mark(f.terms[i + 1]).to_rational()) /
                           rat(2, 1);
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("adjacent pairs at level n differ by exactly 2^-n") {
    for (unsigned n = 0; n <= 10; ++n) {
        FareySequence f = farey_sequence(n);
        Rational gap(BigInt(1), BigInt(1) << n);
        for (std::size_t i = 0; i + 1 < f.terms.size(); ++i) {
            REQUIRE(question_mark(f.terms[i + 1]).to_rational() -
                        question_mark(f.terms[i]).to_rational() ==
                    gap);
        }
    }
}

TEST_CASE("inverse round-trips the level-10 terms") {
    CHECK(question_mark_inverse(Dyadic(BigInt(1), 1)) == rat(1, 2));
    CHECK(question_mark_inverse(Dyadic(BigInt(3), 3)) == rat(2, 5));
    CHECK(question_mark_inverse(Dyadic(BigInt(1), 2)) == rat(1, 3));
    FareySequence f = farey_sequence(10);
    for (std::size_t k = 1; k + 1 < f.terms.size(); ++k)
        REQUIRE(question_mark_inverse(question_mark(f.terms[k])) == f.terms[k]);
}

TEST_CASE("extended values at integers and the query convention") {
    CHECK(mbar(rat(0, 1)) == rat(1, 3));
    CHECK(mbar(rat(1, 1)) == rat(2, 3));
    CHECK(mbar(rat(-1, 1)) == rat(1, 6));
    CHECK(mbar(rat(2, 1)) == rat(5, 6));
    CHECK(mbar(Rational::infinity()) == rat(1, 1));
    // approaches 0 and 1 at the far ends
    CHECK(mbar(rat(-40, 1)) == Rational(BigInt(1), BigInt(3) * (BigInt(1) << 40)));
    CHECK(rat(1, 1) - mbar(rat(40, 1)) == Rational(BigInt(2), BigInt(3) * (BigInt(1) << 40)));
}

TEST_CASE("extended function is strictly increasing on a random rational set") {
    std::mt19937 gen(11);
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<long long> den(1, 30);
    std::vector<Rational> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(rat(num(gen), den(gen)));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) REQUIRE(mbar(xs[i]) < mbar(xs[i + 1]));
}

TEST_CASE("arc masses") {
    CHECK(measure_arc(Arc(rat(0, 1), rat(1, 1))) == rat(1, 3));
    CHECK(measure_arc(Arc(rat(1, 1), rat(0, 1))) == rat(2, 3));
    // unit intervals [m, m+1] weigh 2^-|m|/3
    for (long long m = -10; m <= 10; ++m) {
        long long absm = m < 0 ? -m : m;
        REQUIRE(measure_arc(Arc(rat(m, 1), rat(m + 1, 1))) ==
                Rational(BigInt(1), BigInt(3) * (BigInt(1) << absm)));
    }
}

TEST_CASE("adjacent-pair arcs weigh 2^-n/3 at level n") {
    for (unsigned n = 0; n <= 10; ++n) {
        FareySequence f = farey_sequence(n);
        Rational expect(BigInt(1), BigInt(3) * (BigInt(1) << n));
        for (std::size_t i = 0; i + 1 < f.terms.size(); ++i)
            REQUIRE(measure_arc(Arc(f.terms[i], f.terms[i + 1])) == expect);
    }
}

TEST_CASE("complementary arcs have total mass exactly 1") {
    std::mt19937 gen(23);
    std::uniform_int_distribution<long long> num(-50, 50);
    std::uniform_int_distribution<long long> den(1, 30);
    for (int i = 0; i < 200; ++i) {
        Rational s = rat(num(gen), den(gen));
        Rational e = rat(num(gen), den(gen));
        if (s == e) continue;
        REQUIRE(measure_arc(Arc(s, e)) + measure_arc(Arc(e, s)) == rat(1, 1));
    }
    // the point at infinity carries no mass
    CHECK(measure_arc(Arc(rat(0, 1), Rational::infinity())) +
              measure_arc(Arc(Rational::infinity(), rat(0, 1))) ==
          rat(1, 1));
}
