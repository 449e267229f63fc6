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

#include <istream>
#include <sstream>
#include <string>

#include "fareylab/manifest.hpp"
#include "fareylab/walk.hpp"

namespace fareylab {

/**
 * Ensemble serialization: config echo as '#' comment lines, then one CSV row
 * per walk. The worker count is deliberately absent so the bytes depend only
 * on (measure, steps, walks, seed, x0).
 */
inline std::string stats_to_csv(const EnsembleStats& stats) {
    std::string out;
    out.reserve(stats.records.size() * 32 + 128);
    out += "# steps " + std::to_string(stats.config.steps) + "\n";
    out += "# walks " + std::to_string(stats.config.walks) + "\n";
    out += "# seed " + std::to_string(stats.config.seed) + "\n";
    out += "# x0 " + format_double(stats.config.x0[0]) + " " + format_double(stats.config.x0[1]) +
           "\n";
    out += "walk_id,log_radius,direction\n";
    for (std::size_t i = 0; i < stats.records.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(stats.records[i].log_radius);
        out += ',';
        out += format_double(stats.records[i].direction);
        out += '\n';
    }
    return out;
}

inline EnsembleStats stats_from_csv(std::istream& in) {
    EnsembleStats stats;
    stats.config.steps = 0;  // sentinel: the config echo must set it
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "steps")
                ls >> stats.config.steps;
            else if (key == "walks")
                ls >> stats.config.walks;
            else if (key == "seed")
                ls >> stats.config.seed;
            else if (key == "x0")
                ls >> stats.config.x0[0] >> stats.config.x0[1];
            continue;
        }
        if (!saw_header) {  // column header row
            saw_header = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ValidationError("stats row needs walk_id,log_radius,direction: '" + line + "'");
        WalkRecord rec;
        rec.log_radius = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const std::string dir = line.substr(c2 + 1);
        rec.direction = dir == "inf" ? std::numeric_limits<double>::infinity()
                        : dir == "-inf" ? -std::numeric_limits<double>::infinity()
                                        : std::stod(dir);
        stats.records.push_back(rec);
    }
    if (stats.config.steps == 0) throw ValidationError("stats file lacks the '# steps' config line");
    if (stats.records.empty()) throw ValidationError("stats file holds no walk records");
    return stats;
}

}  // namespace fareylab
