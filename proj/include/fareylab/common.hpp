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

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fareylab {

using BigInt = boost::multiprecision::cpp_int;

/// A requested computation exceeds a configured resource cap. The message
/// always names the cap so callers can re-run with an explicit override.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed user input (strings, files, configs). Maps to exit code 2 in the CLI.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Default desk-scale caps; every cap is overridable at the call site.
inline constexpr unsigned kFareyLevelCap = 20;   // 2^20 + 1 sequence terms
inline constexpr unsigned kSphereCap = 22;       // 3 * 2^21 group elements
inline constexpr std::uint64_t kWalksCap = 10'000'000;

}  // namespace fareylab
