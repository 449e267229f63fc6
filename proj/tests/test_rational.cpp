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

#include "fareylab/farey.hpp"
#include "fareylab/group.hpp"
#include "fareylab/mobius.hpp"
#include "fareylab/rational.hpp"

using namespace fareylab;

namespace {

Rational rat(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

// Random group element as a product of random generator letters.
Mat2 random_element(std::mt19937& gen, unsigned max_len) {
    std::uniform_int_distribution<unsigned> len_dist(0, max_len);
    std::uniform_int_distribution<int> pick(0, 2);
    Mat2 m;
    char last = '\0';
    unsigned len = len_dist(gen);
    for (unsigned i = 0; i < len; ++i) {
        char name;
        do {
            name = kGeneratorNames[static_cast<std::size_t>(pick(gen))];
        } while (name == last);
        m = m * generator_matrix(name);
        last = name;
    }
    return m;
}

Rational random_rational(std::mt19937& gen) {
    std::uniform_int_distribution<long long> num(-40, 40);
    std::uniform_int_distribution<long long> den(1, 25);
    return rat(num(gen), den(gen));
}

// positive cyclic orientation of three distinct circle points
bool ccw(const Rational& x, const Rational& y, const Rational& z) {
    return Arc(x, z).contains(y);
}

}  // namespace

TEST_CASE("construction reduces and normalizes") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(-2, 4) == rat(-1, 2));
    CHECK(rat(1, -2) == rat(-1, 2));
    CHECK(rat(-3, -6) == rat(1, 2));
    CHECK(rat(0, 7) == rat(0, 1));
    CHECK(rat(5, 0) == Rational::infinity());
    CHECK(Rational::infinity().str() == "1/0");
}

TEST_CASE("reduction idempotence: (2p, 2q) equals (p, q)") {
    std::mt19937 gen(7);
    for (int i = 0; i < 500; ++i) {
        Rational x = random_rational(gen);
        CHECK(Rational(2 * x.num(), 2 * x.den()) == x);
    }
}

TEST_CASE("invalid constructions are rejected") {
    CHECK_THROWS_AS(rat(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(rat(-1, 0), std::invalid_argument);
    CHECK_THROWS_AS(rat(-7, 0), std::invalid_argument);
}

TEST_CASE("ordering places infinity above all finite values") {
    CHECK(rat(1, 2) < rat(2, 3));
    CHECK(rat(-5, 1) < rat(0, 1));
    CHECK(rat(1000000, 1) < Rational::infinity());
    CHECK(Rational::infinity() == Rational::infinity());
}

TEST_CASE("parsing and printing round-trip") {
    CHECK(Rational::parse("3/4") == rat(3, 4));
    CHECK(Rational::parse("-3/4") == rat(-3, 4));
    CHECK(Rational::parse("7") == rat(7, 1));
    CHECK(Rational::parse("1/0") == Rational::infinity());
    CHECK(Rational::parse(rat(22, 7).str()) == rat(22, 7));
    CHECK_THROWS_AS(Rational::parse("x/y"), ValidationError);
    CHECK_THROWS_AS(Rational::parse(""), ValidationError);
    CHECK_THROWS_AS(Rational::parse("-1/0"), ValidationError);
}

TEST_CASE("mediant examples") {
    CHECK(mediant(rat(0, 1), rat(1, 1)) == rat(1, 2));
    CHECK(mediant(Rational::infinity(), rat(0, 1)) == rat(1, 1));
    CHECK(mediant(rat(1, 3), rat(1, 2)) == rat(2, 5));
}

TEST_CASE("mediant of 1/3 and 1/2 appears between them at level 3") {
    // brute-force construction of the level-3 sequence via the recurrence
    FareySequence f3 = farey_sequence(3);
    auto it = std::find(f3.terms.begin(), f3.terms.end(), rat(2, 5));
    REQUIRE(it != f3.terms.end());
    CHECK(*(it - 1) == rat(1, 3));
    CHECK(*(it + 1) == rat(1, 2));
}

TEST_CASE("mediant is order-intermediate across consecutive pairs up to level 10") {
    for (unsigned n = 0; n <= 10; ++n) {
        FareySequence f = farey_sequence(n);
        for (std::size_t i = 0; i + 1 < f.terms.size(); ++i) {
            Rational m = mediant(f.terms[i], f.terms[i + 1]);
            CHECK(f.terms[i] < m);
            CHECK(m < f.terms[i + 1]);
        }
    }
}

TEST_CASE("moebius application examples") {
    const Mat2& a = generator_matrix('a');
    const Mat2& b = generator_matrix('b');
    CHECK(a.apply(rat(0, 1)) == rat(2, 1));
    CHECK(Mat2::identity().apply(rat(7, 3)) == rat(7, 3));
    CHECK(b.apply(Rational::infinity()) == rat(0, 1));
    CHECK(a.apply(rat(1, 1)) == Rational::infinity());
}

TEST_CASE("determinant is enforced") {
    CHECK_THROWS_AS(Mat2(BigInt(2), BigInt(0), BigInt(0), BigInt(1)), std::invalid_argument);
    CHECK_THROWS_AS(Mat2(BigInt(1), BigInt(0), BigInt(0), BigInt(-1)), std::invalid_argument);
}

TEST_CASE("arc image examples") {
    const Mat2& a = generator_matrix('a');
    const Mat2& c = generator_matrix('c');
    Arc unit(rat(0, 1), rat(1, 1));
    CHECK(unit.image(a) == Arc(rat(2, 1), Rational::infinity()));
    CHECK(unit.image(Mat2::identity()) == unit);
    // wraps through infinity: c(0)=1, c(1)=0 and the midpoint goes to ∞
    Arc wrapped = unit.image(c);
    CHECK(wrapped == Arc(rat(1, 1), rat(0, 1)));
    CHECK(c.apply(rat(1, 2)) == Rational::infinity());
    CHECK(wrapped.contains(Rational::infinity()));
}

TEST_CASE("arc membership examples") {
    Arc unit(rat(0, 1), rat(1, 1));
    CHECK(unit.contains(rat(1, 2)));
    CHECK(unit.contains(rat(0, 1)));
    CHECK(unit.contains(rat(1, 1)));
    CHECK_FALSE(unit.contains(rat(2, 1)));
    CHECK_FALSE(unit.contains(Rational::infinity()));
    Arc wrap(rat(1, 1), rat(0, 1));
    CHECK(wrap.contains(Rational::infinity()));
    CHECK(wrap.contains(rat(2, 1)));
    CHECK(wrap.contains(rat(-3, 2)));
    CHECK_FALSE(wrap.contains(rat(1, 2)));
    Arc from_inf(Rational::infinity(), rat(0, 1));
    CHECK(from_inf.contains(rat(-5, 1)));
    CHECK_FALSE(from_inf.contains(rat(1, 2)));
}

TEST_CASE("degenerate arcs are rejected") {
    CHECK_THROWS_AS(Arc(rat(1, 2), rat(1, 2)), std::invalid_argument);
}

TEST_CASE("arc parsing") {
    Arc a = Arc::parse("1/3..1/2");
    CHECK(a.start() == rat(1, 3));
    CHECK(a.end() == rat(1, 2));
    CHECK(Arc::parse("1/0..0/1").start() == Rational::infinity());
    CHECK_THROWS_AS(Arc::parse("1/3"), ValidationError);
}

TEST_CASE("moebius maps preserve cyclic orientation (randomized)") {
    std::mt19937 gen(42);
    int done = 0;
    while (done < 10000) {
        Mat2 g = random_element(gen, 12);
        Rational x = random_rational(gen), y = random_rational(gen), z = random_rational(gen);
        if (x == y || y == z || x == z) continue;
        bool before = ccw(x, y, z);
        bool after = ccw(g.apply(x), g.apply(y), g.apply(z));
        REQUIRE(before == after);
        ++done;
    }
}

TEST_CASE("membership commutes with arc images (randomized)") {
    std::mt19937 gen(99);
    int done = 0;
    while (done < 5000) {
        Mat2 g = random_element(gen, 12);
        Rational s = random_rational(gen), e = random_rational(gen), x = random_rational(gen);
        if (s == e) continue;
        Arc arc(s, e);
        REQUIRE(arc.image(g).contains(g.apply(x)) == arc.contains(x));
        ++done;
    }
}
