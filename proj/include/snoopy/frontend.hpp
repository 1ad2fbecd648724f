#pragma once

// On-watch front end: sliding-window framing, 41-feature frame summaries,
// linear-SVM input detection, label smoothing, longest-run segment
// extraction, password-positive identification, and the adaptive three-mode
// sensing loop with its energy ledger.

#include "snoopy/numerics.hpp"
#include "snoopy/simwatch.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace snoopy {

constexpr int kNumFeatures = 41;
constexpr int kNumSegmentFeatures = 2 * kNumFeatures + 1;

using FeatureVector = Eigen::Matrix<double, kNumFeatures, 1>;
using SegmentFeatures = Eigen::Matrix<double, kNumSegmentFeatures, 1>;

// ---------------------------------------------------------------------------
// Framing

struct Frame {
  std::size_t start = 0;
  std::size_t len = 0;
  Mat data;  // len x 3 accelerometer window
};

/// Frame start indices 0, S, 2S, ... with start + T <= n.
std::vector<std::size_t> frame_starts(std::size_t n, std::size_t T, std::size_t S);

std::vector<Frame> frame_stream(std::span<const Vec3> samples, std::size_t T, std::size_t S);
std::vector<Frame> frame_stream(const MotionSegment& seg, std::size_t T, std::size_t S);

/// Ground-truth frame labels: 1 when the frame overlaps an input interval.
std::vector<int> frame_truth(const MotionSegment& seg, std::size_t T, std::size_t S);

// ---------------------------------------------------------------------------
// Features
//
// Per axis (x, y, z), 12 each: mean, variance, skewness, excess kurtosis, min,
// max, range, median, RMS, interquartile range, mean absolute deviation,
// mean-crossing count. Then 5 cross-axis values: mean l1, mean l2 and mean
// l-infinity norm of the per-sample vectors, Frobenius norm of the window,
// and signal magnitude area of the mean-removed window.

FeatureVector extract_features(const Mat& window);
FeatureVector extract_features(const Frame& frame);

/// Accel features, gyro features, and duration in seconds.
SegmentFeatures segment_features(const MotionSegment& seg);

// ---------------------------------------------------------------------------
// Linear SVM (Pegasos)

struct SvmConfig {
  double lambda = 1e-4;
  int epochs = 50;
};

struct LinearSvm {
  FeatureVector w = FeatureVector::Zero();
  double b = 0.0;
  double lambda = 1e-4;
  FeatureVector mean = FeatureVector::Zero();
  FeatureVector scale = FeatureVector::Ones();
  bool trained = false;

  FeatureVector standardize(const FeatureVector& x) const;
};

struct SvmPrediction {
  int label = -1;
  double margin = 0.0;
};

/// Regularized mean hinge objective on standardized features.
double svm_objective(const LinearSvm& model, std::span<const FeatureVector> X,
                     std::span<const int> y);

LinearSvm svm_train(std::span<const FeatureVector> X, std::span<const int> y, SvmConfig cfg,
                    SeededRng& rng);

SvmPrediction svm_predict(const LinearSvm& model, const FeatureVector& x);

// ---------------------------------------------------------------------------
// Smoothing and segment extraction

struct HmmSmoother {
  double p_stay = 0.95;
  double p_emit = 0.85;
};

struct MovingAverageSmoother {
  int window = 9;
};

using Smoother = std::variant<HmmSmoother, MovingAverageSmoother>;

std::vector<int> smooth(std::span<const int> labels, const Smoother& smoother);

/// Inclusive [first, last] of the longest run of ones; earliest on ties.
std::optional<std::pair<std::size_t, std::size_t>> longest_positive_segment(
    std::span<const int> labels, std::size_t min_len);

/// |a and b| / ((|a| + |b|) / 2) over positive labels; 1 when both are empty.
double sequence_similarity(std::span<const int> a, std::span<const int> b);

// ---------------------------------------------------------------------------
// Password-positive identification (logistic regression)

struct LogisticIdentifier {
  SegmentFeatures w = SegmentFeatures::Zero();
  double b = 0.0;
  SegmentFeatures mean = SegmentFeatures::Zero();
  SegmentFeatures scale = SegmentFeatures::Ones();
  bool trained = false;
};

struct IdentifierConfig {
  int iterations = 400;
  double lr = 0.05;
  double l2 = 1e-3;
};

LogisticIdentifier train_identifier(std::span<const SegmentFeatures> X, std::span<const int> y,
                                    IdentifierConfig cfg = {});

struct Identification {
  bool password = false;
  double score = 0.0;
};

Identification identify_sequence(const LogisticIdentifier& model, const MotionSegment& seg);
Identification identify_features(const LogisticIdentifier& model, const SegmentFeatures& f);

// ---------------------------------------------------------------------------
// Adaptive sensing and energy

enum class Mode { passive, monitoring, extraction };
std::string to_string(Mode mode);

struct SensingMode {
  Mode mode = Mode::passive;
  int accel_rate_hz = 10;
  bool gyro_on = false;
  int gyro_rate_hz = 0;

  static SensingMode of(Mode mode);
};

/// Percent battery per hour for each (sensor, rate), plus optional per-mode
/// processing overhead under sensor "cpu" keyed by mode name.
class CostTable {
 public:
  void set(const std::string& sensor, int rate_hz, double pct_per_hr);
  void set_cpu(Mode mode, double pct_per_hr);
  bool has(const std::string& sensor, int rate_hz) const;
  double get(const std::string& sensor, int rate_hz) const;
  double cpu(Mode mode) const;

  /// Draw of a sensing mode (sensors + processing).
  double mode_cost(Mode mode) const;
  /// Draw of constant accel+gyro sampling at `rate_hz`.
  double constant_cost(int rate_hz) const;

  /// Reads `cost.<sensor>.<rate> = value` and `cost.cpu.<mode> = value` keys.
  static CostTable from_config(const std::map<std::string, std::string>& kv);
  /// Constant-rate rows 2.0 / 4.4 / 6.3 %/hr at 50 / 100 / 200 Hz with the
  /// low-rate and processing rows calibrated to them.
  static CostTable reference();

 private:
  std::map<std::pair<std::string, int>, double> sensors_;
  std::array<double, 3> cpu_{};
};

struct ModeSpan {
  Mode mode = Mode::passive;
  std::size_t start = 0;  // episode samples
  std::size_t end = 0;
};

class EnergyLedger {
 public:
  EnergyLedger() = default;
  explicit EnergyLedger(CostTable table) : table_(std::move(table)) {}

  void charge_mode(Mode mode, double seconds);
  void charge_constant(int rate_hz, double seconds);
  void record(ModeSpan span) { timeline_.push_back(span); }

  double accumulated() const { return accumulated_; }
  double seconds(Mode mode) const { return mode_seconds_[static_cast<int>(mode)]; }
  double total_seconds() const { return total_seconds_; }
  /// Average draw over the charged time, percent per hour.
  double rate_pct_per_hr() const;
  const std::vector<ModeSpan>& timeline() const { return timeline_; }
  const CostTable& table() const { return table_; }

 private:
  CostTable table_;
  double accumulated_ = 0.0;
  double total_seconds_ = 0.0;
  std::array<double, 3> mode_seconds_{};
  std::vector<ModeSpan> timeline_;
};

struct FrontendConfig {
  std::size_t frame_len = 60;  // T, at the monitoring rate
  std::size_t stride = 6;      // S
  int monitor_rate_hz = 40;
  int passive_rate_hz = 10;
  int extract_rate_hz = 200;
  std::size_t stop_negatives = 10;  // K
  std::size_t min_len = 10;         // frames
  double trigger_g = 0.5;
  double trigger_window_s = 1.0;
  double monitor_timeout_s = 4.0;
  double guard_s = 0.1;  // padding around a located input, each side
  Smoother smoother = HmmSmoother{};
};

struct FrontendModels {
  LinearSvm detector;
  LogisticIdentifier identifier;
};

struct Candidate {
  std::size_t start = 0;  // episode samples at the extraction rate
  std::size_t end = 0;
  MotionSegment segment;
  double identifier_score = 0.0;
  bool password = false;
};

struct AdaptiveResult {
  std::vector<Candidate> candidates;  // password-positive only
  std::vector<Candidate> rejected;
  std::vector<ModeSpan> cached;       // extraction-mode cache windows
  EnergyLedger ledger;
};

/// Per-frame SVM labels over a segment resampled to the monitoring rate.
std::vector<int> detect_frames(const MotionSegment& seg_at_monitor_rate, const LinearSvm& svm,
                               const FrontendConfig& cfg);

/// Maps a run of positive frames [first, last] back to a sample interval at the
/// frame stream's rate, given `frame_count` frames in total.
std::pair<std::size_t, std::size_t> frames_to_interval(std::size_t first, std::size_t last,
                                                       std::size_t frame_count,
                                                       std::size_t n_samples,
                                                       const FrontendConfig& cfg);

/// Detect, smooth, take the longest run and map it to an interval of the
/// given monitoring-rate accelerometer stream. nullopt when below min_len.
std::optional<std::pair<std::size_t, std::size_t>> locate_input(std::span<const Vec3> accel,
                                                                 const LinearSvm& svm,
                                                                 const FrontendConfig& cfg);

/// locate_input on `seg` (any rate that is a multiple of the monitoring
/// rate), mapped back to its samples and widened by guard_s on each side.
std::optional<std::pair<std::size_t, std::size_t>> extract_segment(const MotionSegment& seg,
                                                                   const LinearSvm& svm,
                                                                   const FrontendConfig& cfg);

AdaptiveResult adaptive_run(const MotionSegment& episode, const FrontendModels& models,
                            const CostTable& costs, const FrontendConfig& cfg = {});

}  // namespace snoopy
