#pragma once

// Command implementations behind the snoopy CLI. Each run_* function reads
// and writes files and throws ConfigError (exit 2) or DataError (exit 3);
// the binary only parses arguments and maps exceptions to exit codes.

#include "snoopy/frontend.hpp"
#include "snoopy/pipeline.hpp"
#include "snoopy/seqmodels.hpp"
#include "snoopy/trainer.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace snoopy {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Key-value configs: `key = value` per line, '#' starts a comment.

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config(const std::string& text);
KeyValues read_config(const std::filesystem::path& path);

std::string kv_string(const KeyValues& kv, const std::string& key, const std::string& fallback);
double kv_double(const KeyValues& kv, const std::string& key, double fallback);
std::int64_t kv_int(const KeyValues& kv, const std::string& key, std::int64_t fallback);
std::uint64_t kv_u64(const KeyValues& kv, const std::string& key, std::uint64_t fallback);

// ---------------------------------------------------------------------------
// Files and manifests

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);
std::string file_hash(const std::filesystem::path& path);

/// `<path>.manifest.json`
std::filesystem::path manifest_path(const std::filesystem::path& path);
nlohmann::json read_manifest(const std::filesystem::path& artifact);

void write_dataset(const std::filesystem::path& path, const std::vector<DatasetRecord>& records);
std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path);

std::set<int> users_of(const std::vector<DatasetRecord>& records);

/// Sorted users; the last ceil(val_fraction * n) go to validation (none when
/// there is a single user).
std::pair<std::set<int>, std::set<int>> split_users(const std::set<int>& users,
                                                    double val_fraction);

// ---------------------------------------------------------------------------
// gen

DatasetConfig dataset_config_from(const KeyValues& kv);
WorkloadConfig workload_config_from(const KeyValues& kv);
/// Database from kind / db_size / skew / db_seed.
PasswordDb database_from(const KeyValues& kv);

struct GenSummary {
  std::size_t records = 0;
  std::set<int> users;
  std::string hash;
};

/// mode = entries (default): password-entry records for the sequence
/// models. mode = workload: long labeled 200 Hz episodes for energy runs.
GenSummary run_gen(const KeyValues& kv, std::optional<std::uint64_t> seed,
                   const std::filesystem::path& out);

// ---------------------------------------------------------------------------
// train

using AnyModel = std::variant<Seq2PwdModel, Seq2DgtModel>;

std::string kind_of(const AnyModel& model);
nlohmann::json model_to_json(const AnyModel& model);
AnyModel model_from_json(const nlohmann::json& j);
AnyModel load_model(const std::filesystem::path& path);

/// The single password kind of a record set; DataError if mixed or empty.
PasswordKind dataset_kind(const std::vector<DatasetRecord>& records);

std::vector<ClassSample> class_samples(const std::vector<DatasetRecord>& records,
                                       const Seq2PwdModel& model);
std::vector<SequenceSample> sequence_samples(const std::vector<DatasetRecord>& records,
                                             const Seq2DgtModel& model);

struct TrainSummary {
  std::string model;
  std::set<int> train_users;
  std::set<int> val_users;
  LossReport report;
};

/// Keys: TrainConfig fields, hidden, decoder_hidden, embed, attention,
/// val_fraction, train_device (optional record filter). Writes the model to
/// `out`, the loss curve to `<out>.loss.csv` and a manifest.
TrainSummary run_train(const std::string& model_kind, const std::filesystem::path& data,
                       const KeyValues& kv, std::optional<std::uint64_t> seed,
                       const std::filesystem::path& out);

// ---------------------------------------------------------------------------
// attack

struct AttackReport {
  std::string model;
  std::string dataset;  // content hash of the evaluated data
  std::size_t n = 0;
  std::vector<double> curve;     // success@k for k = 1..K
  std::vector<double> baseline;  // random guessing at the same k
  nlohmann::json to_json() const;
  /// k,<model>,baseline
  std::string to_csv() const;
};

/// 0-based position of the truth among the guesses, or -1.
int guess_rank(const GuessList& guesses, const Password& truth);

/// Success curve from per-sample ranks (-1 = never guessed).
std::vector<double> success_curve(const std::vector<int>& ranks, std::size_t k_max);

/// Random-guess baseline: k / |P| for seq2pwd, k / |space| for seq2dgt.
std::vector<double> random_baseline(const AnyModel& model, std::size_t k_max);

AttackReport evaluate_attack(const AnyModel& model, const std::vector<DatasetRecord>& records,
                             std::size_t k_max);

/// Checks the model manifest's user sets against the test users first.
AttackReport run_attack(const std::filesystem::path& model_path,
                        const std::filesystem::path& data, std::size_t k_max,
                        const std::optional<std::string>& test_device,
                        const std::filesystem::path& out);

// ---------------------------------------------------------------------------
// energy

constexpr int kConstantRates[] = {50, 100, 200};

struct EnergyRow {
  std::string strategy;  // "50Hz", "100Hz", "200Hz", "adaptive"
  double energy_pct_per_hr = 0.0;
  std::map<std::string, double> acc_at_10;  // per model kind
  std::map<std::string, double> acc_at_1;
};

struct EnergySweep {
  std::vector<EnergyRow> rows;
  std::size_t password_episodes = 0;
  double hours = 0.0;
  std::string to_csv() const;
  const EnergyRow& row(const std::string& strategy) const;
};

/// Cost table with every rate the sweep needs; ConfigError otherwise.
CostTable sweep_cost_table(const KeyValues& kv);

struct EnergyInputs {
  CostTable costs;
  FrontendModels frontend;
  FrontendConfig frontend_cfg;
  std::vector<AnyModel> models;
  double constant_margin_s = 0.1;
};

EnergySweep energy_sweep(const std::vector<DatasetRecord>& episodes, const EnergyInputs& in);

/// Profile keys: cost.*, smoother, frontend.episodes, frontend.seed,
/// model.seq2pwd / model.seq2dgt paths, constant_margin_s.
EnergySweep run_energy(const KeyValues& profile, const std::filesystem::path& episodes,
                       std::optional<std::uint64_t> seed, const std::filesystem::path& out);

// ---------------------------------------------------------------------------
// plot

struct CsvSeries {
  std::vector<std::string> names;          // header after the first column
  std::vector<double> x;
  std::vector<std::vector<double>> y;      // one vector per name
};

CsvSeries parse_series_csv(const std::string& text);
/// Fixed y range [0, 1]; one polyline and legend entry per series.
std::string render_svg(const CsvSeries& series);
void run_plot(const std::filesystem::path& csv, const std::filesystem::path& out);

}  // namespace snoopy
