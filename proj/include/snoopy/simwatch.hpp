#pragma once

// Synthetic smartwatch IMU streams: tap impulses (underdamped oscillator),
// swipes (minimum-jerk fingertip trajectories with friction), background
// activities, and labeled multi-action episodes.
//
// Watch frame: x toward 3 o'clock (forearm axis), y toward 12 o'clock, z out
// of the screen. Accelerometer values are specific force in m/s^2 and include
// gravity; gyroscope values are rad/s.

#include "snoopy/numerics.hpp"
#include "snoopy/passwords.hpp"

#include <json.hpp>

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace snoopy {

using Vec3 = Eigen::Vector3d;

constexpr double kGravity = 9.80665;

enum class LabelKind { password, interaction, none };

std::string to_string(LabelKind kind);
LabelKind label_kind_from_string(const std::string& s);

/// Half-open sample interval [start, end).
struct LabelInterval {
  LabelKind kind = LabelKind::none;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  friend bool operator==(const LabelInterval&, const LabelInterval&) = default;
};

struct MotionSample {
  double t = 0.0;
  Vec3 accel = Vec3::Zero();
  Vec3 gyro = Vec3::Zero();
};

struct MotionSegment {
  int rate_hz = 200;
  std::vector<MotionSample> samples;
  std::vector<LabelInterval> labels;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration() const { return static_cast<double>(samples.size()) / rate_hz; }

  /// Samples [start, end) with labels clipped and re-indexed.
  MotionSegment slice(std::size_t start, std::size_t end) const;
  /// Union of password and interaction intervals, in order.
  std::vector<LabelInterval> input_intervals() const;
  std::optional<LabelInterval> password_interval() const;
};

bool is_supported_rate(int rate_hz);

enum class Geometry { round, square };

struct DeviceProfile {
  std::string name = "sony_sw3";
  double impulse_gain = 3.0;        // m/s^2 per unit tap force
  double resonant_freq_hz = 14.0;
  double damping_ratio = 0.25;
  double lever_arm = 0.022;         // m, screen plane to forearm axis
  double noise_accel = 0.04;        // m/s^2 per axis
  double noise_gyro = 0.01;         // rad/s per axis
  Geometry geometry = Geometry::square;

  /// Fraction of the screen-normal response leaking into x/y.
  double cross_coupling() const { return geometry == Geometry::round ? 0.18 : 0.08; }
  void validate() const;

  static DeviceProfile sony_sw3();
  static DeviceProfile gear_live();
  static DeviceProfile moto360();
  static DeviceProfile by_name(const std::string& name);
};

struct LogNormalParam {
  double median = 1.0;
  double sigma = 0.0;

  double sample(SeededRng& rng) const { return median * std::exp(sigma * rng.normal()); }
};

struct UserProfile {
  LogNormalParam tap_duration{0.12, 0.2};   // s
  LogNormalParam inter_tap_gap{0.38, 0.3};  // s, onset-to-onset minus tap duration
  double swipe_speed = 0.04;                // m/s
  double swipe_jitter = 0.3;                // lognormal sigma of total swipe time
  double tap_force_jitter = 0.2;            // lognormal sigma of tap force
  double position_jitter = 0.0012;          // m, fingertip placement error
  double tremor_amp = 0.02;                 // m/s^2

  void validate() const;
  static UserProfile standard();
  /// Deterministic per-user variation around the standard profile.
  static UserProfile for_user(std::uint64_t population_seed, int user_id);
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  double snr_db = 10.0;  // +inf disables added noise
  DeviceProfile device = DeviceProfile::sony_sw3();
  UserProfile user = UserProfile::standard();
  int rate_hz = 200;

  void validate() const;
};

constexpr double kSmartwatchSnrDb = 10.0;
constexpr double kSmartphoneSnrDb = 35.0;
constexpr double kNoAddedNoise = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Screen geometry

/// PIN keypad key centre (m, screen-centred) on a 3x4 grid over 34 mm.
Eigen::Vector2d keypad_position(int digit);
/// APL dot centre (m, screen-centred) on a 3x3 grid with 10 mm pitch.
Eigen::Vector2d apl_dot_position(int dot);

// ---------------------------------------------------------------------------
// Orientation

enum class Pose { arm_down, face_up, desk, rest };
Vec3 pose_gravity(Pose pose);

// ---------------------------------------------------------------------------
// Generators. Each draws from `rng` and adds the device noise floor and user
// tremor; overloads without an rng use SeededRng(cfg.seed).

MotionSegment synth_tap(int digit, const GeneratorConfig& cfg, SeededRng& rng);
MotionSegment synth_tap(int digit, const GeneratorConfig& cfg);

MotionSegment synth_pin(const Pin& pin, const GeneratorConfig& cfg, SeededRng& rng);

/// Kinematic decomposition of a swipe's screen-plane accelerometer response
/// (noise free, gravity free). Under time reversal of the pattern `even` is
/// reversed unchanged and `odd` is reversed with its sign flipped.
struct SwipeComponents {
  std::vector<Vec3> even;
  std::vector<Vec3> odd;
  std::vector<Vec3> gyro;
  std::vector<double> crossing_times;  // s, interior dot crossings
};

/// Total swipe duration drawn for this pattern and user (s, on the sample grid).
double draw_swipe_duration(const AplPattern& apl, const GeneratorConfig& cfg, SeededRng& rng);
SwipeComponents swipe_components(const AplPattern& apl, double duration,
                                 const GeneratorConfig& cfg);

MotionSegment synth_swipe(const AplPattern& apl, const GeneratorConfig& cfg, SeededRng& rng);
MotionSegment synth_swipe(const AplPattern& apl, const GeneratorConfig& cfg);

MotionSegment synth_password(const Password& p, const GeneratorConfig& cfg, SeededRng& rng);

enum class ActivityKind { walk, drink, type, still, stairs };
std::string to_string(ActivityKind kind);
ActivityKind activity_kind_from_string(const std::string& s);

MotionSegment synth_activity(ActivityKind kind, double duration, const GeneratorConfig& cfg,
                             SeededRng& rng);

/// Non-password screen interaction: one or two taps, or a single long swipe.
struct InteractionInfo {
  int events = 0;
  bool swipe = false;
};
MotionSegment synth_nonpassword_interaction(const GeneratorConfig& cfg, SeededRng& rng,
                                            InteractionInfo* info = nullptr);

// ---------------------------------------------------------------------------
// Episodes

struct ActivityAction {
  ActivityKind kind = ActivityKind::still;
  double duration = 2.0;
};
struct PasswordAction {
  Password password;
};
struct InteractionAction {};

using Action = std::variant<ActivityAction, PasswordAction, InteractionAction>;

bool is_interaction(const Action& a);

constexpr double kRampSeconds = 0.6;
constexpr double kHoldSeconds = 0.3;

/// Concatenates actions with short still transitions; every interaction is
/// preceded by a wrist-raise ramp from the arm-down pose.
MotionSegment compose_episode(const std::vector<Action>& actions, const GeneratorConfig& cfg,
                              SeededRng& rng);

/// Number of transition samples compose_episode inserts before action `index`.
std::size_t transition_samples(const std::vector<Action>& actions, std::size_t index,
                               int rate_hz);

// ---------------------------------------------------------------------------
// Post-processing

struct SnrMeasurement {
  double accel_db = 0.0;
  double gyro_db = 0.0;
};

/// AC signal power per axis inside the input intervals (whole segment if none).
double signal_power(const MotionSegment& seg, bool gyro);

/// Adds white Gaussian noise so the measured in-interval SNR equals snr_db for
/// accel and gyro independently. Returns the measured ratios if requested.
MotionSegment add_noise_to_snr(const MotionSegment& seg, double snr_db, SeededRng& rng,
                               SnrMeasurement* measured = nullptr);

/// Integer-factor decimation (moving-average prefilter) or zero-order-hold
/// upsampling between supported rates.
MotionSegment resample(const MotionSegment& seg, int new_rate);

// ---------------------------------------------------------------------------
// Dataset records (JSON Lines)

struct DatasetRecord {
  std::int64_t id = 0;
  std::string device;
  int user = 0;
  std::optional<Password> password;
  MotionSegment segment;
};

nlohmann::json record_to_json(const DatasetRecord& r);
DatasetRecord record_from_json(const nlohmann::json& j);

}  // namespace snoopy
