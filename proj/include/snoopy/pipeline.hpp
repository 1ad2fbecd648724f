#pragma once

// Glue between the simulator and the front end: labeled benchmark episodes,
// password-entry datasets for the sequence models, front-end training, and
// extraction-chain scoring.

#include "snoopy/frontend.hpp"
#include "snoopy/passwords.hpp"
#include "snoopy/simwatch.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace snoopy {

// ---------------------------------------------------------------------------
// Benchmark episodes: [activity, screen input, activity]

struct BenchmarkConfig {
  std::size_t episodes = 200;
  std::uint64_t seed = 7;
  double snr_db = kSmartwatchSnrDb;
  std::string device = "sony_sw3";
  double password_fraction = 0.7;  // otherwise a non-password interaction
  double pin_fraction = 0.5;       // among password entries
  double min_activity_s = 2.0;
  double max_activity_s = 4.0;
  int users = 20;
  std::uint64_t population_seed = 1234;  // user profiles, shared with datasets
};

struct BenchmarkEpisode {
  MotionSegment segment;  // 200 Hz
  std::optional<Password> password;
  int user = 0;
};

BenchmarkEpisode make_episode(const std::vector<Action>& actions, int user,
                              const BenchmarkConfig& cfg, SeededRng& rng);
std::vector<BenchmarkEpisode> make_benchmark(const BenchmarkConfig& cfg);

// ---------------------------------------------------------------------------
// Long mixed workloads: stretches of daily activity, some ending in a screen
// input (a database password or another interaction) and a short pause.

struct WorkloadConfig {
  double duration_s = 3600.0;
  double min_activity_s = 30.0;
  double max_activity_s = 60.0;
  double input_prob = 0.9;
  double password_prob = 0.8;  // among inputs
  int users = 3;
  int user_offset = 10;
  std::uint64_t seed = 404;
  std::uint64_t population_seed = 1234;
  double snr_db = kSmartwatchSnrDb;
  std::string device = "sony_sw3";
};

/// Chunks in order; their durations add up to at least duration_s.
std::vector<BenchmarkEpisode> make_workload(const WorkloadConfig& cfg, const PasswordDb& db);

// ---------------------------------------------------------------------------
// Password-entry datasets

struct DatasetConfig {
  PasswordKind kind = PasswordKind::apl;
  std::size_t db_size = 20;
  double skew = 0.0;
  std::uint64_t db_seed = 11;
  int users = 10;
  int user_offset = 0;
  std::size_t pwds_per_user = 6;
  std::size_t reps = 20;
  double snr_db = kSmartwatchSnrDb;
  std::string device = "sony_sw3";
  std::uint64_t seed = 1;
  std::uint64_t population_seed = 1234;
  // Per-entry cut jitter on each side: negative trims into the entry,
  // positive keeps surrounding context.
  double min_margin_s = -0.1;
  double max_margin_s = 0.3;
  int rate_hz = 200;
};

/// Records for users [user_offset, user_offset + users), in user-major order.
std::vector<DatasetRecord> generate_dataset(const DatasetConfig& cfg, const PasswordDb& db);

// ---------------------------------------------------------------------------
// Front end

struct FrontendTrainConfig {
  SvmConfig svm;
  IdentifierConfig identifier;
  std::uint64_t seed = 3;
};

FrontendModels train_frontend(const std::vector<BenchmarkEpisode>& episodes,
                              const FrontendConfig& cfg, const FrontendTrainConfig& tcfg = {});

struct ExtractionScores {
  double frame_f1 = 0.0;
  double mean_similarity = 0.0;
  double identification_f1 = 0.0;
  std::size_t episodes = 0;
};

/// Indicator over frames of the smoothed longest positive run (all zero when
/// no run reaches min_len).
std::vector<int> run_indicator(std::span<const int> smoothed, std::size_t min_len);

ExtractionScores evaluate_extraction(const std::vector<BenchmarkEpisode>& episodes,
                                     const FrontendModels& models, const FrontendConfig& cfg);

double f1_score(std::size_t tp, std::size_t fp, std::size_t fn);

}  // namespace snoopy
