// core/include/hasr/features/io.h

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

#ifndef HASR_FEATURES_IO_H_
#define HASR_FEATURES_IO_H_

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hasr/common/types.h"
#include "hasr/features/feature_matrix.h"

namespace hasr::features {

// "FEAT" file: magic, u32 T, u32 D, T×D little-endian float32, row-major.
void WriteFeatures(std::ostream& os, const Matrix& frames);
Matrix ReadFeatures(std::istream& is);
void WriteFeatureFile(const std::string& path, const Matrix& frames);
Matrix ReadFeatureFile(const std::string& path);

// Text alignment file: one line per utterance, `utt_id T id_1 ... id_T`.
struct Alignment {
  std::string utt_id;
  std::vector<StateId> states;
};
void WriteAlignments(std::ostream& os, const std::vector<Alignment>& alignments);
std::vector<Alignment> ReadAlignments(std::istream& is, const std::string& origin = "<stream>");
void WriteAlignmentFile(const std::string& path, const std::vector<Alignment>& alignments);
std::vector<Alignment> ReadAlignmentFile(const std::string& path);

// Feature list: `utt_id path` per line. Relative paths are resolved against
// the list file's directory.
struct FeatureListEntry {
  std::string utt_id;
  std::string path;
};
void WriteFeatureList(const std::string& path, const std::vector<FeatureListEntry>& entries);
std::vector<FeatureListEntry> ReadFeatureList(const std::string& path);

// Raw 16-bit little-endian PCM at `path` plus a one-line sidecar at
// `path + ".txt"` holding `sample_rate side_id`.
void WriteWaveform(const std::string& path, const Waveform& wave);
Waveform ReadWaveform(const std::string& path);

// Transcripts: `utt_id w1 w2 ...` per line.
using Transcript = std::pair<std::string, std::vector<std::string>>;
void WriteTranscripts(const std::string& path, const std::vector<Transcript>& transcripts);
std::vector<Transcript> ReadTranscripts(const std::string& path);

}  // namespace hasr::features

#endif  // HASR_FEATURES_IO_H_
