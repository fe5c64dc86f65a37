// core/include/hasr/common/text_util.h

// Copyright 2026 The hybridasr Authors

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

#ifndef HASR_COMMON_TEXT_UTIL_H_
#define HASR_COMMON_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace hasr {

std::vector<std::string> SplitWhitespace(std::string_view line);
std::string Trim(std::string_view s);
bool StartsWith(std::string_view s, std::string_view prefix);

// Strict numeric parsing: the whole token must be consumed.
bool ParseDouble(std::string_view token, double* out);
bool ParseInt(std::string_view token, long long* out);

// Shortest decimal text that reads back to the same double.
std::string FormatDouble(double value);

}  // namespace hasr

#endif  // HASR_COMMON_TEXT_UTIL_H_
