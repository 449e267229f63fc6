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

#include <set>

#include "fareylab/farey.hpp"

using namespace fareylab;

namespace {
Rational rat(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }
}

TEST_CASE("levels 0..2 match the recurrence") {
    CHECK(farey_sequence(0).terms == std::vector<Rational>{rat(0, 1), rat(1, 1)});
    CHECK(farey_sequence(1).terms == std::vector<Rational>{rat(0, 1), rat(1, 2), rat(1, 1)});
    CHECK(farey_sequence(2).terms ==
          std::vector<Rational>{rat(0, 1), rat(1, 3), rat(1, 2), rat(2, 3), rat(1, 1)});
}

TEST_CASE("sequence sizes, monotonicity and adjacency determinant up to level 14") {
    for (unsigned n = 0; n <= 14; ++n) {
        FareySequence f = farey_sequence(n);
        REQUIRE(f.terms.size() == (std::size_t{1} << n) + 1);
        for (std::size_t i = 0; i + 1 < f.terms.size(); ++i) {
            const Rational& p = f.terms[i];
            const Rational& q = f.terms[i + 1];
            REQUIRE(p < q);
            REQUIRE(p.den() * q.num() - p.num() * q.den() == 1);
        }
    }
}

TEST_CASE("terms are pairwise distinct up to level 14") {
    FareySequence f = farey_sequence(14);
    std::set<std::pair<BigInt, BigInt>> seen;
    for (const Rational& t : f.terms) REQUIRE(seen.insert({t.num(), t.den()}).second);
}

TEST_CASE("each level refines the previous one by mediants") {
    for (unsigned n = 0; n < 10; ++n) {
        FareySequence cur = farey_sequence(n);
        FareySequence next = farey_sequence(n + 1);
        REQUIRE(next.terms.size() == 2 * cur.terms.size() - 1);
        for (std::size_t i = 0; i < cur.terms.size(); ++i)
            REQUIRE(next.terms[2 * i] == cur.terms[i]);
        for (std::size_t i = 0; i + 1 < cur.terms.size(); ++i)
            REQUIRE(next.terms[2 * i + 1] == mediant(cur.terms[i], cur.terms[i + 1]));
    }
}

TEST_CASE("level cap raises a resource error naming the cap") {
    CHECK_THROWS_AS(farey_sequence(21), ResourceLimitError);
    CHECK_THROWS_WITH(farey_sequence(21), Catch::Matchers::ContainsSubstring("cap 20"));
    CHECK_NOTHROW(farey_sequence(8, 8));
    CHECK_THROWS_AS(farey_sequence(9, 8), ResourceLimitError);
}

TEST_CASE("pair level examples") {
    CHECK(farey_pair_level(rat(0, 1), rat(1, 1)) == 0u);
    CHECK(farey_pair_level(rat(1, 3), rat(1, 2)) == 2u);
    CHECK_FALSE(farey_pair_level(rat(1, 3), rat(2, 3)).has_value());
}

TEST_CASE("pair level agrees with sequence adjacency up to level 10") {
    std::vector<FareySequence> seqs;
    for (unsigned n = 0; n <= 10; ++n) seqs.push_back(farey_sequence(n));
    for (unsigned n = 0; n <= 10; ++n) {
        const auto& terms = seqs[n].terms;
        for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
            auto level = farey_pair_level(terms[i], terms[i + 1]);
            REQUIRE(level.has_value());
            // consecutive terms at level n first became adjacent exactly at n:
            // the next refinement inserts their mediant between them
            REQUIRE(*level == n);
        }
    }
}

TEST_CASE("descent path examples") {
    CHECK(stern_brocot_path(rat(1, 2)).empty());
    CHECK(path_str(stern_brocot_path(rat(1, 3))) == "L");
    CHECK(path_str(stern_brocot_path(rat(3, 5))) == "RL");
    CHECK_THROWS_AS(stern_brocot_path(rat(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(stern_brocot_path(rat(3, 2)), std::invalid_argument);
}

TEST_CASE("descent depth equals the level of the bracketing pair") {
    for (unsigned n = 1; n <= 10; ++n) {
        FareySequence f = farey_sequence(n);
        // interior terms of level n are the new mediants of level n-1 brackets
        for (std::size_t i = 1; i + 1 < f.terms.size(); i += 2) {
            auto depth = stern_brocot_path(f.terms[i]).size();
            auto level = farey_pair_level(f.terms[i - 1], f.terms[i + 1]);
            REQUIRE(level.has_value());
            REQUIRE(depth == *level);
        }
    }
}
