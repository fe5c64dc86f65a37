// core/include/hasr/common/binary_io.h

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

#ifndef HASR_COMMON_BINARY_IO_H_
#define HASR_COMMON_BINARY_IO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "hasr/common/types.h"

namespace hasr::io {

// Little-endian primitive writers/readers. All container formats in this
// library are little-endian regardless of host byte order.
void WriteU32(std::ostream& os, std::uint32_t value);
void WriteF64(std::ostream& os, double value);
void WriteF32(std::ostream& os, float value);
void WriteMagic(std::ostream& os, std::string_view magic);

std::uint32_t ReadU32(std::istream& is);
double ReadF64(std::istream& is);
float ReadF32(std::istream& is);
// Throws ParseError if the next bytes are not `magic`.
void ExpectMagic(std::istream& is, std::string_view magic, const std::string& what);

// u32 rows, u32 cols, then row-major f64 payload.
void WriteMatrix(std::ostream& os, const Matrix& m);
Matrix ReadMatrix(std::istream& is);
void WriteVector(std::ostream& os, const Vector& v);
Vector ReadVector(std::istream& is);

}  // namespace hasr::io

#endif  // HASR_COMMON_BINARY_IO_H_
