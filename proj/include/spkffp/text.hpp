// include/spkffp/text.hpp

// Copyright 2026  The spkffp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPKFFP_TEXT_HPP_
#define SPKFFP_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace spkffp {

std::string_view trim(std::string_view s);

// Trims and collapses every internal whitespace run to a single space.
std::string normalize_whitespace(std::string_view s);

std::vector<std::string_view> split_whitespace(std::string_view s);

std::size_t word_count(std::string_view s);

std::vector<std::string> split(std::string_view s, char delimiter);

std::string ascii_lower(std::string_view s);
std::string ascii_upper(std::string_view s);

// Fixed-point rendering with the given number of decimals ("%.*f").
std::string format_fixed(double value, int decimals);

// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view contents);

}  // namespace spkffp

#endif  // SPKFFP_TEXT_HPP_
