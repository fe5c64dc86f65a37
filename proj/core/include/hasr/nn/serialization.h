// core/include/hasr/nn/serialization.h

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

#ifndef HASR_NN_SERIALIZATION_H_
#define HASR_NN_SERIALIZATION_H_

#include <istream>
#include <ostream>
#include <string>

#include "hasr/nn/layer_spec.h"
#include "hasr/nn/model_params.h"
#include "hasr/nn/network.h"

namespace hasr::nn {

inline constexpr std::uint32_t kNnetVersion = 1;

// "NNET" container:
//   magic "NNET", u32 version, u32 num_layers,
//   num_layers × layer record (16 × u32, see WriteLayerRecord),
//   then per parameterized layer, in layer order:
//     weights (u32 rows, u32 cols, f64 row-major), bias (u32 n, f64),
//     and for recurrent layers the recurrence matrix.
// All integers and floats are little-endian.
void WriteNnet(std::ostream& os, const NetworkSpec& spec, const ModelParams& params);
// Reads a container written by WriteNnet. `require_output` selects between
// full-network and stack validation.
void ReadNnet(std::istream& is, NetworkSpec* spec, ModelParams* params,
              bool require_output = true);

void SaveNetwork(const std::string& path, const Network& net);
Network LoadNetwork(const std::string& path);

}  // namespace hasr::nn

#endif  // HASR_NN_SERIALIZATION_H_
