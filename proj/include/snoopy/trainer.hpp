#pragma once

// Losses, backpropagation through both sequence models, dropout, the Adam
// training loop with early stopping, and the finite-difference gradient check.

#include "snoopy/numerics.hpp"
#include "snoopy/seqmodels.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace snoopy {

constexpr double kLogClamp = 1e-12;

/// -log(pred[label] + 1e-12).
double cross_entropy(const Vec& pred, int label);

/// Inverted dropout: keeps each entry with probability 1 - p and rescales by
/// 1 / (1 - p). Identity when p == 0 or not training. The applied mask (with
/// the scale folded in) is written to `mask` when given.
Vec apply_dropout(const Vec& a, double p, SeededRng& rng, bool training, Vec* mask = nullptr);

struct TrainConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t batch_size = 32;
  int epochs = 50;
  double dropout = 0.25;
  double grad_clip_norm = 5.0;
  std::uint64_t seed = 1;
  int patience = 5;

  void validate() const;
  /// Reads the keys above (same names) from a key-value map; unknown keys
  /// are ignored.
  static TrainConfig from_map(const std::map<std::string, std::string>& kv);
};

struct ClassSample {
  Mat X;  // normalized T x D
  int label = 0;
};

struct SequenceSample {
  Mat X;
  std::vector<int> tokens;  // terminated target sequence
};

/// Mean negative log-likelihood of one sample (no dropout).
double sample_loss(const Seq2PwdModel& model, const ClassSample& s);
/// Mean per-step cross-entropy of one target sequence under teacher forcing.
double sample_loss(const Seq2DgtModel& model, const SequenceSample& s);

/// Adds dLoss/dparams for one sample into `grads`, scaled by `weight`;
/// returns the sample loss. Dropout (p > 0 with an rng) masks the head input.
double accumulate_gradients(const Seq2PwdModel& model, const ClassSample& s, double weight,
                            Seq2PwdModel& grads, double dropout = 0.0, SeededRng* rng = nullptr);
double accumulate_gradients(const Seq2DgtModel& model, const SequenceSample& s, double weight,
                            Seq2DgtModel& grads, double dropout = 0.0, SeededRng* rng = nullptr);

/// Scales the gradient set so its global norm is at most `max_norm`; returns
/// the norm before scaling.
double clip_global_norm(const NamedParams& grads, double max_norm);

template <typename Model>
struct Gradients {
  Model grads;
  double loss = 0.0;       // mean over the batch
  double norm = 0.0;       // global norm before clipping
};

struct GradOptions {
  double dropout = 0.0;
  double clip_norm = std::numeric_limits<double>::infinity();
  SeededRng* rng = nullptr;
};

Gradients<Seq2PwdModel> bptt_gradients(const Seq2PwdModel& model,
                                       std::span<const ClassSample> batch,
                                       const GradOptions& opts = {});
Gradients<Seq2DgtModel> bptt_gradients(const Seq2DgtModel& model,
                                       std::span<const SequenceSample> batch,
                                       const GradOptions& opts = {});

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double seconds = 0.0;
};

struct LossReport {
  std::vector<EpochRecord> epochs;  // epoch 0 is the untrained model
  int best_epoch = 0;

  /// epoch,train_loss,val_loss,seconds
  std::string to_csv(bool with_seconds = true) const;
};

template <typename Model>
struct TrainResult {
  Model model;
  LossReport report;
};

/// Adam with seeded shuffling; returns the best-validation checkpoint.
TrainResult<Seq2PwdModel> train(const Seq2PwdModel& init, const std::vector<ClassSample>& train_set,
                                const std::vector<ClassSample>& val_set, const TrainConfig& cfg);
TrainResult<Seq2DgtModel> train(const Seq2DgtModel& init,
                                const std::vector<SequenceSample>& train_set,
                                const std::vector<SequenceSample>& val_set, const TrainConfig& cfg);

struct GradCheckReport {
  std::string model;
  std::vector<std::pair<std::string, double>> per_tensor;  // max relative error
  double max_rel_error = 0.0;
  bool fault_injected = false;
  double seconds = 0.0;
};

/// Builds a tiny model (H = 8, T = 20, 5 classes or the APL vocab) and
/// compares analytic gradients with central differences (h = 1e-5) on every
/// parameter. With `inject_fault` the largest analytic gradient entry is
/// zeroed first, which the comparison must expose.
GradCheckReport grad_check(const std::string& kind, bool inject_fault = false,
                           std::uint64_t seed = 1);

}  // namespace snoopy
