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

#include "fareylab/manifest.hpp"

using namespace fareylab;

namespace {
RunManifest sample_manifest() {
    RunManifest m;
    m.subcommand = "orbit limit";
    m.set_flag("arc", "0/1..1/1");
    m.set_flag("base", "0/1");
    m.set_flag("nmax", "12");
    m.seed = 42;
    return m;
}
}  // namespace

TEST_CASE("manifest hash is stable and ignores duration") {
    RunManifest a = sample_manifest();
    RunManifest b = sample_manifest();
    b.duration_ms = 12345.0;
    CHECK(a.stable_hash() == b.stable_hash());
    CHECK(a.comment_line() == b.comment_line());
    CHECK(a.comment_line().rfind("# manifest ", 0) == 0);
    CHECK(a.hash_hex().size() == 16);
}

TEST_CASE("manifest hash reacts to flags, seed and subcommand") {
    RunManifest base = sample_manifest();
    RunManifest flag = sample_manifest();
    flag.set_flag("nmax", "13");
    CHECK(base.stable_hash() != flag.stable_hash());
    RunManifest seed = sample_manifest();
    seed.seed = 43;
    CHECK(base.stable_hash() != seed.stable_hash());
    RunManifest sub = sample_manifest();
    sub.subcommand = "orbit stationarity";
    CHECK(base.stable_hash() != sub.stable_hash());
}

TEST_CASE("flag order does not matter") {
    RunManifest x;
    x.subcommand = "walk run";
    x.set_flag("steps", "120");
    x.set_flag("walks", "1000");
    RunManifest y;
    y.subcommand = "walk run";
    y.set_flag("walks", "1000");
    y.set_flag("steps", "120");
    CHECK(x.stable_hash() == y.stable_hash());
}

TEST_CASE("manifest json carries the duration but hashes without it") {
    RunManifest m = sample_manifest();
    m.duration_ms = 77.0;
    auto j = nlohmann::json::parse(m.to_json());
    CHECK(j["duration_ms"] == 77.0);
    CHECK(j["hash"] == m.hash_hex());
    CHECK(j["subcommand"] == "orbit limit");
    CHECK(j["seed"] == 42);
}

TEST_CASE("csv and json encode identical tables") {
    Table t;
    t.columns = {"n", "count", "ratio_num", "ratio_den", "target"};
    t.rows = {{"1", "1", "1", "3", "1/3"}, {"2", "3", "1", "2", "1/3"}};
    Table from_csv = Table::from_csv(t.to_csv());
    Table from_json = Table::from_json(t.to_json());
    CHECK(from_csv == t);
    CHECK(from_json == t);
    CHECK(from_csv == from_json);
}

TEST_CASE("parsers skip manifest comment lines") {
    Table t;
    t.columns = {"x"};
    t.rows = {{"1/2"}};
    RunManifest m = sample_manifest();
    Table csv = Table::from_csv(m.comment_line() + "\n" + t.to_csv());
    Table json = Table::from_json(m.comment_line() + "\n" + t.to_json());
    CHECK(csv == t);
    CHECK(json == t);
}

TEST_CASE("doubles format with round-trip precision") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    const double v = 0.1234567890123456789;
    CHECK(std::stod(format_double(v)) == v);
}
