// core/src/common/binary_io.cc

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

#include "hasr/common/binary_io.h"

#include <bit>
#include <cstring>

#include "hasr/common/errors.h"

namespace hasr::io {
namespace {

void WriteBytesLe(std::ostream& os, std::uint64_t bits, int nbytes) {
  char buf[8];
  for (int i = 0; i < nbytes; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(buf, nbytes);
  if (!os) throw IoError("write failed");
}

std::uint64_t ReadBytesLe(std::istream& is, int nbytes) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), nbytes);
  if (is.gcount() != nbytes) throw ParseError("unexpected end of binary stream");
  std::uint64_t bits = 0;
  for (int i = 0; i < nbytes; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return bits;
}

}  // namespace

void WriteU32(std::ostream& os, std::uint32_t value) { WriteBytesLe(os, value, 4); }

void WriteF64(std::ostream& os, double value) {
  WriteBytesLe(os, std::bit_cast<std::uint64_t>(value), 8);
}

void WriteF32(std::ostream& os, float value) {
  WriteBytesLe(os, std::bit_cast<std::uint32_t>(value), 4);
}

void WriteMagic(std::ostream& os, std::string_view magic) {
  os.write(magic.data(), static_cast<std::streamsize>(magic.size()));
  if (!os) throw IoError("write failed");
}

std::uint32_t ReadU32(std::istream& is) { return static_cast<std::uint32_t>(ReadBytesLe(is, 4)); }

double ReadF64(std::istream& is) { return std::bit_cast<double>(ReadBytesLe(is, 8)); }

float ReadF32(std::istream& is) {
  return std::bit_cast<float>(static_cast<std::uint32_t>(ReadBytesLe(is, 4)));
}

void ExpectMagic(std::istream& is, std::string_view magic, const std::string& what) {
  std::string buf(magic.size(), '\0');
  is.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (is.gcount() != static_cast<std::streamsize>(magic.size()) || buf != magic) {
    throw ParseError(what + ": bad magic, expected '" + std::string(magic) + "'");
  }
}

void WriteMatrix(std::ostream& os, const Matrix& m) {
  WriteU32(os, static_cast<std::uint32_t>(m.rows()));
  WriteU32(os, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) WriteF64(os, m(r, c));
  }
}

Matrix ReadMatrix(std::istream& is) {
  const std::uint32_t rows = ReadU32(is);
  const std::uint32_t cols = ReadU32(is);
  Matrix m(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) m(r, c) = ReadF64(is);
  }
  return m;
}

void WriteVector(std::ostream& os, const Vector& v) {
  WriteU32(os, static_cast<std::uint32_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) WriteF64(os, v(i));
}

Vector ReadVector(std::istream& is) {
  const std::uint32_t n = ReadU32(is);
  Vector v(n);
  for (std::uint32_t i = 0; i < n; ++i) v(i) = ReadF64(is);
  return v;
}

}  // namespace hasr::io
