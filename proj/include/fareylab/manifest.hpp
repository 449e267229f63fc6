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
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fareylab/common.hpp"

namespace fareylab {

inline constexpr const char* kVersion = "fareylab 0.1.0";

/**
 * \brief Record of one CLI run, serialized alongside every output file.
 *
 * The stable hash covers subcommand, sorted flags, seed and tool version but
 * not the wall-clock duration, so identical invocations stamp identical
 * hashes into their outputs.
 */
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> flags;  // kept sorted by key
    std::optional<std::uint64_t> seed;
    std::string version = kVersion;
    double duration_ms = 0.0;

    void set_flag(const std::string& key, const std::string& value) {
        auto it = std::lower_bound(flags.begin(), flags.end(), key,
                                   [](const auto& kv, const std::string& k) { return kv.first < k; });
        if (it != flags.end() && it->first == key)
            it->second = value;
        else
            flags.insert(it, {key, value});
    }

    std::string canonical() const {
        std::string s = subcommand;
        for (const auto& [k, v] : flags) {
            s += '\x1f';
            s += k;
            s += '=';
            s += v;
        }
        if (seed) {
            s += "\x1fseed=";
            s += std::to_string(*seed);
        }
        s += '\x1f';
        s += version;
        return s;
    }

    std::uint64_t stable_hash() const {
        // FNV-1a, 64 bit
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char ch : canonical()) {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    std::string hash_hex() const {
        static const char* digits = "0123456789abcdef";
        std::uint64_t h = stable_hash();
        std::string s(16, '0');
        for (int i = 15; i >= 0; --i) {
            s[static_cast<std::size_t>(i)] = digits[h & 0xf];
            h >>= 4;
        }
        return s;
    }

    /// First line of every output file.
    std::string comment_line() const { return "# manifest " + hash_hex(); }

    std::string to_json() const {
        nlohmann::json j;
        j["subcommand"] = subcommand;
        nlohmann::json jf = nlohmann::json::object();
        for (const auto& [k, v] : flags) jf[k] = v;
        j["flags"] = std::move(jf);
        if (seed) j["seed"] = *seed;
        j["version"] = version;
        j["duration_ms"] = duration_ms;
        j["hash"] = hash_hex();
        return j.dump(2);
    }
};

/**
 * \brief Column-named table of string cells.
 *
 * One neutral representation behind both output formats; the CSV and JSON
 * emitters encode identical data and the parsers skip leading '#' comment
 * lines, so emit(parse(x)) round-trips.
 */
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::string out = join(columns);
        for (const auto& row : rows) {
            out += '\n';
            out += join(row);
        }
        out += '\n';
        return out;
    }

    std::string to_json() const {
        nlohmann::json j;
        j["columns"] = columns;
        j["rows"] = rows;
        return j.dump(2) + "\n";
    }

    static Table from_csv(const std::string& text) {
        Table t;
        std::istringstream in(text);
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            std::vector<std::string> cells;
            std::size_t pos = 0;
            for (;;) {
                std::size_t comma = line.find(',', pos);
                if (comma == std::string::npos) {
                    cells.push_back(line.substr(pos));
                    break;
                }
                cells.push_back(line.substr(pos, comma - pos));
                pos = comma + 1;
            }
            if (header) {
                t.columns = std::move(cells);
                header = false;
            } else {
                t.rows.push_back(std::move(cells));
            }
        }
        return t;
    }

    static Table from_json(const std::string& text) {
        // tolerate a leading manifest comment line
        std::size_t start = 0;
        while (start < text.size() && (text[start] == '#' || text[start] == '\n')) {
            if (text[start] == '#') {
                start = text.find('\n', start);
                if (start == std::string::npos) return {};
            } else {
                ++start;
            }
        }
        nlohmann::json j = nlohmann::json::parse(text.substr(start));
        Table t;
        t.columns = j.at("columns").get<std::vector<std::string>>();
        t.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
        return t;
    }

    bool operator==(const Table& o) const { return columns == o.columns && rows == o.rows; }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        return out;
    }
};

/// Shortest round-trip decimal for a double; deterministic across runs and
/// platforms with IEEE doubles, which the bit-identical-output tests rely on.
inline std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

}  // namespace fareylab
