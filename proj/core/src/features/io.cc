// core/src/features/io.cc

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

#include "hasr/features/io.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hasr/common/binary_io.h"
#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"

namespace hasr::features {
namespace fs = std::filesystem;

namespace {

std::ifstream OpenIn(const std::string& path, bool binary) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return is;
}

std::ofstream OpenOut(const std::string& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void Close(std::ofstream& os, const std::string& path) {
  os.close();
  if (!os) throw IoError("failed writing '" + path + "'");
}

}  // namespace

void WriteFeatures(std::ostream& os, const Matrix& frames) {
  io::WriteMagic(os, "FEAT");
  io::WriteU32(os, static_cast<std::uint32_t>(frames.rows()));
  io::WriteU32(os, static_cast<std::uint32_t>(frames.cols()));
  for (Eigen::Index r = 0; r < frames.rows(); ++r) {
    for (Eigen::Index c = 0; c < frames.cols(); ++c) io::WriteF32(os, static_cast<float>(frames(r, c)));
  }
}

Matrix ReadFeatures(std::istream& is) {
  io::ExpectMagic(is, "FEAT", "feature file");
  const std::uint32_t rows = io::ReadU32(is);
  const std::uint32_t cols = io::ReadU32(is);
  if (rows == 0 || cols == 0) throw ParseError("feature file has an empty matrix");
  Matrix m(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      m(r, c) = io::ReadF32(is);
      if (!std::isfinite(m(r, c))) throw ParseError("feature file contains a non-finite value");
    }
  }
  return m;
}

void WriteFeatureFile(const std::string& path, const Matrix& frames) {
  auto os = OpenOut(path, true);
  WriteFeatures(os, frames);
  Close(os, path);
}

Matrix ReadFeatureFile(const std::string& path) {
  auto is = OpenIn(path, true);
  try {
    return ReadFeatures(is);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void WriteAlignments(std::ostream& os, const std::vector<Alignment>& alignments) {
  for (const auto& a : alignments) {
    os << a.utt_id << ' ' << a.states.size();
    for (StateId s : a.states) os << ' ' << s;
    os << '\n';
  }
}

std::vector<Alignment> ReadAlignments(std::istream& is, const std::string& origin) {
  std::vector<Alignment> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    long long count = 0;
    if (tokens.size() < 2 || !ParseInt(tokens[1], &count) || count < 0) {
      throw ParseError(where + ": expected 'utt_id T id_1 ... id_T'");
    }
    if (static_cast<long long>(tokens.size()) != count + 2) {
      throw ParseError(where + ": declared " + std::to_string(count) + " states but found " +
                       std::to_string(tokens.size() - 2));
    }
    Alignment a;
    a.utt_id = tokens[0];
    a.states.reserve(count);
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      long long id = 0;
      if (!ParseInt(tokens[i], &id) || id < 0) throw ParseError(where + ": bad state id '" + tokens[i] + "'");
      a.states.push_back(static_cast<StateId>(id));
    }
    out.push_back(std::move(a));
  }
  return out;
}

void WriteAlignmentFile(const std::string& path, const std::vector<Alignment>& alignments) {
  auto os = OpenOut(path, false);
  WriteAlignments(os, alignments);
  Close(os, path);
}

std::vector<Alignment> ReadAlignmentFile(const std::string& path) {
  auto is = OpenIn(path, false);
  return ReadAlignments(is, path);
}

void WriteFeatureList(const std::string& path, const std::vector<FeatureListEntry>& entries) {
  auto os = OpenOut(path, false);
  for (const auto& e : entries) os << e.utt_id << ' ' << e.path << '\n';
  Close(os, path);
}

std::vector<FeatureListEntry> ReadFeatureList(const std::string& path) {
  auto is = OpenIn(path, false);
  const fs::path base = fs::path(path).parent_path();
  std::vector<FeatureListEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'utt_id path'");
    fs::path p(tokens[1]);
    if (p.is_relative()) p = base / p;
    out.push_back({tokens[0], p.string()});
  }
  return out;
}

void WriteWaveform(const std::string& path, const Waveform& wave) {
  wave.Validate();
  if (SplitWhitespace(wave.side_id).size() != 1) {
    throw ConfigError("waveform side id must be a single non-empty token");
  }
  auto os = OpenOut(path, true);
  for (std::int16_t s : wave.samples) {
    const auto u = static_cast<std::uint16_t>(s);
    const char bytes[2] = {static_cast<char>(u & 0xff), static_cast<char>(u >> 8)};
    os.write(bytes, 2);
  }
  Close(os, path);
  auto meta = OpenOut(path + ".txt", false);
  meta << wave.sample_rate << ' ' << wave.side_id << '\n';
  Close(meta, path + ".txt");
}

Waveform ReadWaveform(const std::string& path) {
  Waveform wave;
  {
    auto meta = OpenIn(path + ".txt", false);
    std::string line;
    std::getline(meta, line);
    const auto tokens = SplitWhitespace(line);
    long long rate = 0;
    if (tokens.size() != 2 || !ParseInt(tokens[0], &rate) || rate <= 0) {
      throw ParseError(path + ".txt: expected 'sample_rate side_id'");
    }
    wave.sample_rate = static_cast<int>(rate);
    wave.side_id = tokens[1];
  }
  auto is = OpenIn(path, true);
  std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (bytes.size() % 2 != 0) throw ParseError(path + ": odd byte count for 16-bit PCM");
  wave.samples.resize(bytes.size() / 2);
  for (std::size_t i = 0; i < wave.samples.size(); ++i) {
    const auto lo = static_cast<std::uint8_t>(bytes[2 * i]);
    const auto hi = static_cast<std::uint8_t>(bytes[2 * i + 1]);
    wave.samples[i] = static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8)));
  }
  wave.Validate();
  return wave;
}

void WriteTranscripts(const std::string& path, const std::vector<Transcript>& transcripts) {
  auto os = OpenOut(path, false);
  for (const auto& [utt, words] : transcripts) {
    os << utt;
    for (const auto& w : words) os << ' ' << w;
    os << '\n';
  }
  Close(os, path);
}

std::vector<Transcript> ReadTranscripts(const std::string& path) {
  auto is = OpenIn(path, false);
  std::vector<Transcript> out;
  std::string line;
  while (std::getline(is, line)) {
    auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    Transcript t;
    t.first = tokens.front();
    t.second.assign(tokens.begin() + 1, tokens.end());
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace hasr::features
