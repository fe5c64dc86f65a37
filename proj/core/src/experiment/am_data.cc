// core/src/experiment/am_data.cc

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

#include "hasr/experiment/am_data.h"

#include <filesystem>
#include <fstream>
#include <map>

#include "hasr/common/errors.h"
#include "hasr/common/text_util.h"
#include "hasr/features/io.h"

namespace hasr::experiment {

bool AmData::HasAlignments() const {
  if (utterances.empty()) return false;
  for (const auto& u : utterances) {
    if (u.states.empty()) return false;
  }
  return true;
}

int AmData::FeatureDim() const {
  if (utterances.empty()) throw DataError("acoustic data set is empty");
  return static_cast<int>(utterances.front().frames.cols());
}

std::vector<Matrix> AmData::Frames() const {
  std::vector<Matrix> out;
  out.reserve(utterances.size());
  for (const auto& u : utterances) out.push_back(u.frames);
  return out;
}

std::vector<std::string> AmData::Sides() const {
  std::vector<std::string> out;
  for (const auto& u : utterances) out.push_back(u.side_id);
  return out;
}

std::vector<std::vector<StateId>> AmData::States() const {
  std::vector<std::vector<StateId>> out;
  for (const auto& u : utterances) out.push_back(u.states);
  return out;
}

std::size_t AmData::NumFrames() const {
  std::size_t n = 0;
  for (const auto& u : utterances) n += static_cast<std::size_t>(u.frames.rows());
  return n;
}

AmData FromSynth(const decode::SynthCorpus& corpus) {
  AmData d;
  d.topology = corpus.model.topology;
  for (const auto& u : corpus.utterances) {
    d.utterances.push_back({u.utt_id, u.side_id, u.frames, u.states, corpus.Words(u)});
  }
  return d;
}

AmData LoadAmData(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw IoError("data directory '" + dir + "' does not exist");
  AmData d;
  d.topology = decode::HmmTopology::FromFile((root / "topology.txt").string());

  std::map<std::string, std::string> sides;
  if (std::ifstream in(root / "utt2side"); in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto f = SplitWhitespace(line);
      if (f.empty()) continue;
      if (f.size() != 2) {
        throw ParseError((root / "utt2side").string() + ":" + std::to_string(lineno) + ": expected 'utt side'");
      }
      sides[f[0]] = f[1];
    }
  }
  std::map<std::string, std::vector<StateId>> ali;
  if (fs::exists(root / "ali.txt")) {
    for (auto& a : features::ReadAlignmentFile((root / "ali.txt").string())) ali[a.utt_id] = std::move(a.states);
  }
  std::map<std::string, std::vector<std::string>> text;
  if (fs::exists(root / "text")) {
    for (auto& t : features::ReadTranscripts((root / "text").string())) text[t.first] = std::move(t.second);
  }

  for (const auto& entry : features::ReadFeatureList((root / "feats.scp").string())) {
    AmUtterance u;
    u.utt_id = entry.utt_id;
    const auto side = sides.find(u.utt_id);
    u.side_id = side == sides.end() ? u.utt_id : side->second;
    u.frames = features::ReadFeatureFile(entry.path);
    if (const auto a = ali.find(u.utt_id); a != ali.end()) {
      if (static_cast<Eigen::Index>(a->second.size()) != u.frames.rows()) {
        throw DataError("alignment of '" + u.utt_id + "' has " + std::to_string(a->second.size()) +
                        " states for " + std::to_string(u.frames.rows()) + " frames");
      }
      u.states = a->second;
    }
    if (const auto t = text.find(u.utt_id); t != text.end()) u.words = t->second;
    d.utterances.push_back(std::move(u));
  }
  if (d.utterances.empty()) throw DataError("no utterances listed in '" + (root / "feats.scp").string() + "'");
  return d;
}

}  // namespace hasr::experiment
