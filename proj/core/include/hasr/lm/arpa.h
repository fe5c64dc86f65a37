// core/include/hasr/lm/arpa.h

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

#ifndef HASR_LM_ARPA_H_
#define HASR_LM_ARPA_H_

#include <istream>
#include <ostream>
#include <string>

#include "hasr/lm/ngram_model.h"

namespace hasr::lm {

// log10 values with 7 decimals; <s> gets the conventional -99 probability.
// Backoff columns are written for every order below the maximum.
void WriteArpa(std::ostream& os, const NgramModel& model);
void WriteArpaFile(const std::string& path, const NgramModel& model);

// Throws ParseError with the line number on malformed sections or entries,
// and naming the section when the header count disagrees with the body.
NgramModel ReadArpa(std::istream& is, const std::string& origin = "<stream>");
NgramModel ReadArpaFile(const std::string& path);

}  // namespace hasr::lm

#endif  // HASR_LM_ARPA_H_
