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

#include "tfmsep/neuralnet.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tfmsep/errors.hpp"

namespace tfmsep {

namespace {

constexpr char kModelMagic[8] = {'T', 'F', 'M', 'S', 'E', 'P', 'M', '\0'};
constexpr std::uint32_t kModelVersion = 1;

// Inference and loss evaluation run the network in slices of this many
// rows so activation memory stays bounded regardless of set size.
constexpr Index kEvalSlice = 256;

RealMatrix sigmoid(const RealMatrix& z) {
  // 1/(1+exp(-z)) saturates cleanly at 0 and 1 in IEEE arithmetic.
  return (1.0 / (1.0 + (-z.array()).exp())).matrix();
}

void require_model_shapes(const MlpModel& model, const char* what) {
  const std::size_t layers = model.layer_sizes.size();
  if (layers < 2 || model.weights.size() != layers - 1 ||
      model.biases.size() != layers - 1) {
    throw DataError(std::string(what) + ": model tensors are inconsistent");
  }
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    if (model.weights[l].rows() != model.layer_sizes[l] ||
        model.weights[l].cols() != model.layer_sizes[l + 1] ||
        model.biases[l].size() != model.layer_sizes[l + 1]) {
      throw DataError(std::string(what) +
                      ": weight/bias shapes do not match layer sizes");
    }
  }
}

double mse_of_slices(const MlpModel& model, const RealMatrix& x,
                     const RealMatrix& t) {
  double sq = 0.0;
  for (Index start = 0; start < x.rows(); start += kEvalSlice) {
    const Index count = std::min(kEvalSlice, x.rows() - start);
    const RealMatrix pred = forward(model, x.middleRows(start, count));
    sq += (pred - t.middleRows(start, count)).squaredNorm();
  }
  return sq / (static_cast<double>(x.rows()) * x.cols());
}

template <typename T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in) {
  T value;
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw DataError("model: file truncated");
  }
  return value;
}

}  // namespace

void ChunkSpec::validate() const {
  if (bins < 1) {
    throw ParamError("chunk: bins must be at least 1");
  }
  if (width_frames < 1) {
    throw ParamError("chunk: width_frames must be at least 1");
  }
  if (overlap_frames < 0 || overlap_frames >= width_frames) {
    throw ParamError("chunk: overlap_frames must lie in [0, width_frames)");
  }
}

RealMatrix chunk(const RealMatrix& features, const ChunkSpec& spec) {
  spec.validate();
  if (features.rows() != spec.bins) {
    throw DataError("chunk: feature matrix has " +
                    std::to_string(features.rows()) + " rows, spec expects " +
                    std::to_string(spec.bins));
  }
  const Index frames = features.cols();
  if (frames < spec.width_frames) {
    throw DataError("chunk: " + std::to_string(frames) +
                    " frame(s) is shorter than one window of " +
                    std::to_string(spec.width_frames));
  }
  const Index count = (frames - spec.width_frames) / spec.stride() + 1;
  RealMatrix rows(count, spec.flat_len());
  for (Index k = 0; k < count; ++k) {
    const Index start = k * spec.stride();
    for (Index c = 0; c < spec.width_frames; ++c) {
      rows.row(k).segment(c * spec.bins, spec.bins) =
          features.col(start + c).transpose();
    }
  }
  return rows;
}

RealMatrix dechunk(const RealMatrix& rows, const ChunkSpec& spec, Index frames,
                   Index* covered_frames_out) {
  spec.validate();
  if (rows.cols() != spec.flat_len()) {
    throw DataError("dechunk: rows are " + std::to_string(rows.cols()) +
                    " wide, spec expects " + std::to_string(spec.flat_len()));
  }
  if (frames < spec.width_frames) {
    throw DataError("dechunk: target frame count shorter than one window");
  }
  const Index expected = (frames - spec.width_frames) / spec.stride() + 1;
  if (rows.rows() != expected) {
    throw DataError("dechunk: " + std::to_string(rows.rows()) +
                    " chunk(s) inconsistent with " + std::to_string(frames) +
                    " frames (expected " + std::to_string(expected) + ")");
  }

  RealMatrix sum = RealMatrix::Zero(spec.bins, frames);
  std::vector<int> cover(static_cast<std::size_t>(frames), 0);
  for (Index k = 0; k < rows.rows(); ++k) {
    const Index start = k * spec.stride();
    for (Index c = 0; c < spec.width_frames; ++c) {
      sum.col(start + c) +=
          rows.row(k).segment(c * spec.bins, spec.bins).transpose();
      ++cover[static_cast<std::size_t>(start + c)];
    }
  }
  const Index covered = (expected - 1) * spec.stride() + spec.width_frames;
  for (Index f = 0; f < frames; ++f) {
    const int c = cover[static_cast<std::size_t>(f)];
    // Frames past the last full window stay zero.
    if (c > 1) sum.col(f) /= static_cast<double>(c);
  }
  if (covered_frames_out != nullptr) *covered_frames_out = covered;
  return sum;
}

MlpModel MlpModel::init(std::vector<int> layer_sizes, std::uint64_t seed) {
  if (layer_sizes.size() < 2) {
    throw ParamError("mlp: need at least an input and an output layer");
  }
  for (int s : layer_sizes) {
    if (s < 1) {
      throw ParamError("mlp: every layer size must be positive");
    }
  }
  MlpModel model;
  model.layer_sizes = std::move(layer_sizes);
  model.init_seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
    const int fan_in = model.layer_sizes[l];
    const int fan_out = model.layer_sizes[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> uniform(-limit, limit);
    RealMatrix w(fan_in, fan_out);
    for (Index r = 0; r < w.rows(); ++r) {
      for (Index c = 0; c < w.cols(); ++c) {
        w(r, c) = uniform(rng);
      }
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(RealVector::Zero(fan_out));
  }
  return model;
}

RealMatrix forward(const MlpModel& model, const RealMatrix& batch,
                   ForwardCache* cache) {
  require_model_shapes(model, "forward");
  if (batch.cols() != model.input_size()) {
    throw DataError("forward: batch width " + std::to_string(batch.cols()) +
                    " does not match model input size " +
                    std::to_string(model.input_size()));
  }
  if (batch.rows() == 0) {
    throw DataError("forward: empty batch");
  }
  if (!batch.allFinite()) {
    throw NumericError("forward: non-finite input");
  }
  if (cache != nullptr) {
    cache->activations.clear();
    cache->activations.push_back(batch);
  }
  RealMatrix a = batch;
  const std::size_t last = model.weights.size() - 1;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    RealMatrix z = a * model.weights[l];
    z.rowwise() += model.biases[l].transpose();
    a = (l == last) ? std::move(z) : sigmoid(z);
    if (cache != nullptr) cache->activations.push_back(a);
  }
  return a;
}

double mse_loss(const RealMatrix& pred, const RealMatrix& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw DataError("mse_loss: shapes differ");
  }
  if (pred.size() == 0) {
    throw DataError("mse_loss: empty");
  }
  return (pred - target).squaredNorm() / static_cast<double>(pred.size());
}

Gradients backward(const MlpModel& model, const RealMatrix& batch,
                   const RealMatrix& targets) {
  if (targets.cols() != model.output_size() ||
      targets.rows() != batch.rows()) {
    throw DataError("backward: target shape does not match model output");
  }
  ForwardCache cache;
  const RealMatrix pred = forward(model, batch, &cache);
  if (!pred.allFinite()) {
    throw NumericError("backward: non-finite network output");
  }

  const std::size_t n_layers = model.weights.size();
  Gradients grads;
  grads.d_weights.resize(n_layers);
  grads.d_biases.resize(n_layers);

  // d(MSE)/d(pred): every entry contributes (pred-target)^2 / (rows*cols).
  const double scale = 2.0 / static_cast<double>(pred.size());
  RealMatrix delta = scale * (pred - targets);
  for (std::size_t l = n_layers; l-- > 0;) {
    grads.d_weights[l] = cache.activations[l].transpose() * delta;
    grads.d_biases[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      const RealMatrix& a = cache.activations[l];  // sigmoid output
      delta = (delta * model.weights[l].transpose())
                  .cwiseProduct((a.array() * (1.0 - a.array())).matrix());
    }
  }
  return grads;
}

AdamState AdamState::init(const MlpModel& model, const AdamHyper& hyper) {
  AdamState state;
  state.hyper = hyper;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    state.m_weights.push_back(
        RealMatrix::Zero(model.weights[l].rows(), model.weights[l].cols()));
    state.v_weights.push_back(
        RealMatrix::Zero(model.weights[l].rows(), model.weights[l].cols()));
    state.m_biases.push_back(RealVector::Zero(model.biases[l].size()));
    state.v_biases.push_back(RealVector::Zero(model.biases[l].size()));
  }
  return state;
}

void adam_apply(RealMatrix& theta, const RealMatrix& grad, RealMatrix& m,
                RealMatrix& v, long t, const AdamHyper& hyper) {
  if (theta.rows() != grad.rows() || theta.cols() != grad.cols() ||
      m.rows() != grad.rows() || v.rows() != grad.rows() ||
      m.cols() != grad.cols() || v.cols() != grad.cols()) {
    throw DataError("adam: tensor shapes differ");
  }
  if (t < 1) {
    throw ParamError("adam: step counter must be at least 1");
  }
  m = hyper.beta1 * m + (1.0 - hyper.beta1) * grad;
  v = (hyper.beta2 * v.array() + (1.0 - hyper.beta2) * grad.array().square())
          .matrix();
  const double m_corr = 1.0 - std::pow(hyper.beta1, static_cast<double>(t));
  const double v_corr = 1.0 - std::pow(hyper.beta2, static_cast<double>(t));
  theta.array() -= hyper.learning_rate * (m.array() / m_corr) /
                   ((v.array() / v_corr).sqrt() + hyper.epsilon);
}

void adam_step(MlpModel& model, const Gradients& grads, AdamState& state) {
  require_model_shapes(model, "adam_step");
  if (grads.d_weights.size() != model.weights.size() ||
      grads.d_biases.size() != model.biases.size() ||
      state.m_weights.size() != model.weights.size()) {
    throw DataError("adam_step: gradient/state tensor counts differ");
  }
  ++state.step;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    adam_apply(model.weights[l], grads.d_weights[l], state.m_weights[l],
               state.v_weights[l], state.step, state.hyper);
    // Bias vectors run through the same update as one-column matrices.
    RealMatrix b = model.biases[l];
    RealMatrix gb = grads.d_biases[l];
    RealMatrix mb = state.m_biases[l];
    RealMatrix vb = state.v_biases[l];
    adam_apply(b, gb, mb, vb, state.step, state.hyper);
    model.biases[l] = b;
    state.m_biases[l] = mb;
    state.v_biases[l] = vb;
  }
}

TrainResult train(const RealMatrix& predictors, const RealMatrix& targets,
                  const RealMatrix& val_predictors,
                  const RealMatrix& val_targets, const ChunkSpec& spec,
                  const FeatureStats& stats, const TrainConfig& config,
                  std::uint64_t init_seed) {
  spec.validate();
  if (config.epochs < 1) {
    throw ParamError("train: epochs must be at least 1");
  }
  if (config.batch_size < 1) {
    throw ParamError("train: batch_size must be at least 1");
  }
  if (predictors.rows() == 0 || val_predictors.rows() == 0) {
    throw DataError("train: training and validation sets must be non-empty");
  }
  if (predictors.rows() != targets.rows() ||
      val_predictors.rows() != val_targets.rows()) {
    throw DataError("train: predictor/target row counts differ");
  }
  const Index d = spec.flat_len();
  if (predictors.cols() != d || targets.cols() != d ||
      val_predictors.cols() != d || val_targets.cols() != d) {
    throw DataError("train: column width does not match chunk spec (" +
                    std::to_string(d) + ")");
  }

  TrainResult result;
  result.model = MlpModel::init(
      {static_cast<int>(d), static_cast<int>(d), static_cast<int>(d),
       static_cast<int>(d)},
      init_seed);
  result.model.feature_stats = stats;
  result.model.chunk_spec = spec;

  AdamState adam = AdamState::init(result.model);
  std::mt19937_64 shuffle_rng(config.shuffle_seed);

  const Index n = predictors.rows();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle) {
      std::shuffle(order.begin(), order.end(), shuffle_rng);
    }
    for (Index start = 0; start < n; start += config.batch_size) {
      const Index count = std::min<Index>(config.batch_size, n - start);
      RealMatrix batch(count, d);
      RealMatrix batch_targets(count, d);
      for (Index i = 0; i < count; ++i) {
        const Index row = order[static_cast<std::size_t>(start + i)];
        batch.row(i) = predictors.row(row);
        batch_targets.row(i) = targets.row(row);
      }
      const Gradients grads = backward(result.model, batch, batch_targets);
      adam_step(result.model, grads, adam);
    }
    EpochStats es;
    es.epoch = epoch;
    es.train_mse = mse_of_slices(result.model, predictors, targets);
    es.val_mse = mse_of_slices(result.model, val_predictors, val_targets);
    result.history.push_back(es);
  }
  return result;
}

Mask estimate_mask(const MlpModel& model, const RealMatrix& features) {
  require_model_shapes(model, "estimate_mask");
  model.chunk_spec.validate();
  if (features.rows() != model.chunk_spec.bins) {
    throw DataError("estimate_mask: features have " +
                    std::to_string(features.rows()) +
                    " bins, the model was trained on " +
                    std::to_string(model.chunk_spec.bins));
  }
  const RealMatrix rows = chunk(features, model.chunk_spec);
  RealMatrix preds(rows.rows(), rows.cols());
  for (Index start = 0; start < rows.rows(); start += kEvalSlice) {
    const Index count = std::min(kEvalSlice, rows.rows() - start);
    preds.middleRows(start, count) =
        forward(model, rows.middleRows(start, count));
  }
  RealMatrix mask = dechunk(preds, model.chunk_spec, features.cols());
  // The linear output is unconstrained; a mask is not.
  mask = mask.array().min(1.0).max(0.0).matrix();
  return Mask(std::move(mask), MaskKind::kSoft);
}

void save_model(const MlpModel& model, const std::string& path) {
  require_model_shapes(model, "save_model");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("model: cannot open '" + path + "' for writing");
  }
  out.write(kModelMagic, sizeof(kModelMagic));
  write_raw<std::uint32_t>(out, kModelVersion);
  write_raw<std::uint32_t>(out,
                           static_cast<std::uint32_t>(model.layer_sizes.size()));
  for (int s : model.layer_sizes) {
    write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(s));
  }
  write_raw<std::uint64_t>(out, model.init_seed);
  write_raw<double>(out, model.feature_stats.mean);
  write_raw<double>(out, model.feature_stats.std_dev);
  write_raw<double>(out, model.feature_stats.epsilon);
  write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(model.chunk_spec.bins));
  write_raw<std::uint32_t>(out,
                           static_cast<std::uint32_t>(model.chunk_spec.width_frames));
  write_raw<std::uint32_t>(
      out, static_cast<std::uint32_t>(model.chunk_spec.overlap_frames));
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    // Row-major so the file layout is independent of Eigen's default.
    for (Index r = 0; r < model.weights[l].rows(); ++r) {
      for (Index c = 0; c < model.weights[l].cols(); ++c) {
        write_raw<double>(out, model.weights[l](r, c));
      }
    }
    for (Index i = 0; i < model.biases[l].size(); ++i) {
      write_raw<double>(out, model.biases[l](i));
    }
  }
  out.write(kModelMagic, sizeof(kModelMagic));
  if (!out) {
    throw DataError("model: write failed for '" + path + "'");
  }
}

MlpModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("model: cannot open '" + path + "'");
  }
  char magic[sizeof(kModelMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw DataError("model: '" + path + "' is not a model file (bad magic)");
  }
  const auto version = read_raw<std::uint32_t>(in);
  if (version != kModelVersion) {
    throw DataError("model: unsupported format version " +
                    std::to_string(version) + " in '" + path + "' (expected " +
                    std::to_string(kModelVersion) + ")");
  }
  const auto n_layers = read_raw<std::uint32_t>(in);
  if (n_layers < 2 || n_layers > 64) {
    throw DataError("model: corrupt layer count in '" + path + "'");
  }
  MlpModel model;
  model.layer_sizes.resize(n_layers);
  for (auto& s : model.layer_sizes) {
    const auto v = read_raw<std::uint32_t>(in);
    if (v < 1 || v > 10'000'000) {
      throw DataError("model: corrupt layer size in '" + path + "'");
    }
    s = static_cast<int>(v);
  }
  model.init_seed = read_raw<std::uint64_t>(in);
  model.feature_stats.mean = read_raw<double>(in);
  model.feature_stats.std_dev = read_raw<double>(in);
  model.feature_stats.epsilon = read_raw<double>(in);
  model.chunk_spec.bins = static_cast<int>(read_raw<std::uint32_t>(in));
  model.chunk_spec.width_frames = static_cast<int>(read_raw<std::uint32_t>(in));
  model.chunk_spec.overlap_frames =
      static_cast<int>(read_raw<std::uint32_t>(in));
  model.chunk_spec.validate();
  for (std::uint32_t l = 0; l + 1 < n_layers; ++l) {
    RealMatrix w(model.layer_sizes[l], model.layer_sizes[l + 1]);
    for (Index r = 0; r < w.rows(); ++r) {
      for (Index c = 0; c < w.cols(); ++c) {
        w(r, c) = read_raw<double>(in);
      }
    }
    RealVector b(model.layer_sizes[l + 1]);
    for (Index i = 0; i < b.size(); ++i) {
      b(i) = read_raw<double>(in);
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(std::move(b));
  }
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw DataError("model: '" + path + "' is truncated or corrupt");
  }
  // Nothing may follow the trailing magic.
  if (in.peek() != EOF) {
    throw DataError("model: trailing bytes in '" + path + "'");
  }
  return model;
}

}  // namespace tfmsep
