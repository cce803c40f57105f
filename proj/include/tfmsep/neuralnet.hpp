// Copyright 2026 The tfmsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TFMSEP_NEURALNET_HPP_
#define TFMSEP_NEURALNET_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tfmsep/masking.hpp"
#include "tfmsep/spectral.hpp"
#include "tfmsep/types.hpp"

namespace tfmsep {

// How a bins x frames matrix is cut into fixed-size network samples:
// windows of width_frames consecutive frames, advancing by
// width_frames - overlap_frames, flattened frequency-fastest (column by
// column) into rows of bins * width_frames values.
struct ChunkSpec {
  int bins = 65;
  int width_frames = 20;
  int overlap_frames = 10;

  int stride() const { return width_frames - overlap_frames; }
  int flat_len() const { return bins * width_frames; }

  // Raises ParamError unless bins >= 1, width_frames >= 1, and
  // 0 <= overlap_frames < width_frames.
  void validate() const;
};

// Cuts matrix columns into overlapping windows, one flattened window per
// output row. Chunk k covers frames [k*stride, k*stride + width_frames);
// only full windows are taken. Fewer frames than one window raises
// DataError, a row-count mismatch with spec.bins too.
RealMatrix chunk(const RealMatrix& features, const ChunkSpec& spec);

// Inverse of chunk up to averaging: rebuilds a bins x frames matrix where
// every frame holds the arithmetic mean of all chunk rows that cover it.
// Trailing frames no chunk reaches come back as zeros; covered_frames_out
// (optional) receives the index one past the last covered frame.
RealMatrix dechunk(const RealMatrix& rows, const ChunkSpec& spec,
                   Index frames, Index* covered_frames_out = nullptr);

// Fully connected feed-forward network: sigmoid hidden layers and a
// linear output layer, trained under mean squared error. weights[l] maps
// layer l to layer l+1 and is laid out inputs x outputs.
struct MlpModel {
  std::vector<int> layer_sizes;  // input, hidden..., output widths
  std::vector<RealMatrix> weights;
  std::vector<RealVector> biases;
  FeatureStats feature_stats;
  ChunkSpec chunk_spec;
  std::uint64_t init_seed = 0;

  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
  std::size_t layer_count() const { return layer_sizes.size(); }

  // Glorot uniform initialization: weights drawn from
  // U(-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out))), biases zero.
  // layer_sizes needs at least two entries, all positive.
  static MlpModel init(std::vector<int> layer_sizes, std::uint64_t seed);
};

// Post-activation outputs of every layer, activations[0] being the input
// batch. Produced by forward() for reuse in backpropagation.
struct ForwardCache {
  std::vector<RealMatrix> activations;
};

// Runs the network on a batch (one sample per row). Input width must
// match the model's input size; non-finite inputs raise NumericError.
RealMatrix forward(const MlpModel& model, const RealMatrix& batch,
                   ForwardCache* cache = nullptr);

// Mean squared error averaged over every entry:
// sum((pred - target)^2) / (rows * cols).
double mse_loss(const RealMatrix& pred, const RealMatrix& target);

// Loss gradients for every weight matrix and bias vector, same shapes as
// the parameters they correspond to.
struct Gradients {
  std::vector<RealMatrix> d_weights;
  std::vector<RealVector> d_biases;
};

// Backpropagation of mse_loss through the network for one batch.
Gradients backward(const MlpModel& model, const RealMatrix& batch,
                   const RealMatrix& targets);

struct AdamHyper {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First and second moment accumulators, one pair per parameter tensor,
// plus the shared step counter.
struct AdamState {
  std::vector<RealMatrix> m_weights, v_weights;
  std::vector<RealVector> m_biases, v_biases;
  long step = 0;
  AdamHyper hyper;

  static AdamState init(const MlpModel& model, const AdamHyper& hyper = {});
};

// One Adam update of a single tensor, already at step t (t >= 1):
//   m <- beta1*m + (1-beta1)*g        v <- beta2*v + (1-beta2)*g^2
//   theta -= lr * (m / (1-beta1^t)) / (sqrt(v / (1-beta2^t)) + epsilon)
void adam_apply(RealMatrix& theta, const RealMatrix& grad, RealMatrix& m,
                RealMatrix& v, long t, const AdamHyper& hyper);

// Advances the step counter once, then updates every model tensor from
// the matching gradient. Gradient shapes must match the model's.
void adam_step(MlpModel& model, const Gradients& grads, AdamState& state);

struct TrainConfig {
  int epochs = 3;
  int batch_size = 64;
  bool shuffle = true;
  std::uint64_t shuffle_seed = 0;
};

// Loss snapshot taken at the end of each epoch, over the full sets.
struct EpochStats {
  int epoch = 0;  // 1-based
  double train_mse = 0.0;
  double val_mse = 0.0;
};

struct TrainResult {
  MlpModel model;
  std::vector<EpochStats> history;
};

// Trains a fresh network on chunk rows: predictors and targets row for
// row, one held-out validation set for the history. The network gets four
// equal layers [D, D, D, D] where D = spec.flat_len(), sigmoid hidden
// activations, a linear output, Glorot init from init_seed, and minibatch
// Adam under mse_loss. Rows are visited in a freshly shuffled order each
// epoch (drawn from config.shuffle_seed) when config.shuffle is set; the
// final short batch is used as-is. The chunk spec and feature stats are
// stored in the returned model so it can run inference on raw magnitudes.
TrainResult train(const RealMatrix& predictors, const RealMatrix& targets,
                  const RealMatrix& val_predictors,
                  const RealMatrix& val_targets, const ChunkSpec& spec,
                  const FeatureStats& stats, const TrainConfig& config,
                  std::uint64_t init_seed);

// Runs the model over standardized log-magnitude features (bins x frames):
// chunk, forward, dechunk (mean over covering chunks), then clamp into
// [0, 1]. Returns a soft mask of the input shape.
Mask estimate_mask(const MlpModel& model, const RealMatrix& features);

// Serializes a model to the format described in docs/model_format.md.
void save_model(const MlpModel& model, const std::string& path);

// Reads a model back. Wrong magic, unsupported version, or a truncated or
// inconsistent file raises DataError naming the problem.
MlpModel load_model(const std::string& path);

}  // namespace tfmsep

#endif  // TFMSEP_NEURALNET_HPP_
