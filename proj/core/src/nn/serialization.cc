// core/src/nn/serialization.cc

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

#include "hasr/nn/serialization.h"

#include <fstream>

#include "hasr/common/binary_io.h"
#include "hasr/common/errors.h"

namespace hasr::nn {
namespace {

constexpr int kRecordFields = 16;

// Layer record, 16 × u32:
//   kind, input_dim, output_dim, group_size,
//   geom_h, geom_w, geom_c, num_filters, window_h, window_w, stride,
//   pool_h, pool_w, steps, frame_dim, reserved(0)
void WriteLayerRecord(std::ostream& os, const LayerSpec& l) {
  const std::uint32_t fields[kRecordFields] = {
      static_cast<std::uint32_t>(l.kind),
      static_cast<std::uint32_t>(l.input_dim),
      static_cast<std::uint32_t>(l.output_dim),
      static_cast<std::uint32_t>(l.group_size),
      static_cast<std::uint32_t>(l.input_geometry.height),
      static_cast<std::uint32_t>(l.input_geometry.width),
      static_cast<std::uint32_t>(l.input_geometry.channels),
      static_cast<std::uint32_t>(l.num_filters),
      static_cast<std::uint32_t>(l.window_h),
      static_cast<std::uint32_t>(l.window_w),
      static_cast<std::uint32_t>(l.stride),
      static_cast<std::uint32_t>(l.pool_h),
      static_cast<std::uint32_t>(l.pool_w),
      static_cast<std::uint32_t>(l.steps),
      static_cast<std::uint32_t>(l.frame_dim),
      0u,
  };
  for (std::uint32_t f : fields) io::WriteU32(os, f);
}

LayerSpec ReadLayerRecord(std::istream& is) {
  std::uint32_t f[kRecordFields];
  for (auto& v : f) v = io::ReadU32(is);
  if (f[0] > static_cast<std::uint32_t>(LayerKind::kSoftmaxOutput)) {
    throw ParseError("NNET: unknown layer kind " + std::to_string(f[0]));
  }
  LayerSpec l;
  l.kind = static_cast<LayerKind>(f[0]);
  l.input_dim = static_cast<int>(f[1]);
  l.output_dim = static_cast<int>(f[2]);
  l.group_size = static_cast<int>(f[3]);
  l.input_geometry = {static_cast<int>(f[4]), static_cast<int>(f[5]), static_cast<int>(f[6])};
  l.num_filters = static_cast<int>(f[7]);
  l.window_h = static_cast<int>(f[8]);
  l.window_w = static_cast<int>(f[9]);
  l.stride = static_cast<int>(f[10]);
  l.pool_h = static_cast<int>(f[11]);
  l.pool_w = static_cast<int>(f[12]);
  l.steps = static_cast<int>(f[13]);
  l.frame_dim = static_cast<int>(f[14]);
  return l;
}

}  // namespace

void WriteNnet(std::ostream& os, const NetworkSpec& spec, const ModelParams& params) {
  CheckParamsMatch(spec, params);
  io::WriteMagic(os, "NNET");
  io::WriteU32(os, kNnetVersion);
  io::WriteU32(os, static_cast<std::uint32_t>(spec.layers.size()));
  for (const auto& l : spec.layers) WriteLayerRecord(os, l);
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& l = spec.layers[i];
    if (!l.HasParams()) continue;
    const auto& p = params.layers[i];
    io::WriteMatrix(os, p.weights);
    io::WriteVector(os, p.bias);
    if (l.kind == LayerKind::kRecurrentUnfolded) io::WriteMatrix(os, p.recurrent);
  }
}

void ReadNnet(std::istream& is, NetworkSpec* spec, ModelParams* params, bool require_output) {
  io::ExpectMagic(is, "NNET", "NNET container");
  const std::uint32_t version = io::ReadU32(is);
  if (version != kNnetVersion) {
    throw ParseError("NNET: unsupported version " + std::to_string(version));
  }
  const std::uint32_t n = io::ReadU32(is);
  NetworkSpec s;
  s.layers.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) s.layers.push_back(ReadLayerRecord(is));
  if (require_output) {
    s.Validate();
  } else {
    s.ValidateStack();
  }
  ModelParams p;
  p.layers.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!s.layers[i].HasParams()) continue;
    p.layers[i].weights = io::ReadMatrix(is);
    p.layers[i].bias = io::ReadVector(is);
    if (s.layers[i].kind == LayerKind::kRecurrentUnfolded) {
      p.layers[i].recurrent = io::ReadMatrix(is);
    }
  }
  CheckParamsMatch(s, p);
  *spec = std::move(s);
  *params = std::move(p);
}

void SaveNetwork(const std::string& path, const Network& net) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  WriteNnet(os, net.spec(), net.params());
  if (!os) throw IoError("failed writing '" + path + "'");
}

Network LoadNetwork(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open model file '" + path + "'");
  NetworkSpec spec;
  ModelParams params;
  try {
    ReadNnet(is, &spec, &params, true);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  return Network(std::move(spec), std::move(params));
}

}  // namespace hasr::nn
