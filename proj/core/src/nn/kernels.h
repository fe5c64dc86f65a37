// core/src/nn/kernels.h

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

#ifndef HASR_NN_KERNELS_H_
#define HASR_NN_KERNELS_H_

// Internal helpers shared by the single-frame primitives and the batched
// network code.

#include "hasr/common/types.h"
#include "hasr/nn/layers.h"

namespace hasr::nn::internal {

// Gathers every valid window of a flattened HWC block into a
// positions × taps matrix (positions ordered row-major over the output
// grid, taps ordered (dh, dw, c)).
void Im2Col(const double* input, const ConvShape& shape, Matrix* patches);

// Scatter-adds patch gradients back into a flattened HWC block.
void Col2ImAdd(const Matrix& patch_grads, const ConvShape& shape, double* input_grad);

// Max pooling over one flattened HWC block; `winners` receives absolute
// input indices.
void MaxPoolRow(const double* input, const Geometry& g, int pool_h, int pool_w, double* output,
                int* winners);

}  // namespace hasr::nn::internal

#endif  // HASR_NN_KERNELS_H_
