#pragma once

// Recurrent back end: LSTM cell with full BPTT, a bidirectional encoder, the
// whole-password classifier (seq2pwd) and the attention encoder-decoder over
// password symbols (seq2dgt) with beam-search guess ranking.

#include "snoopy/numerics.hpp"
#include "snoopy/passwords.hpp"
#include "snoopy/simwatch.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace snoopy {

using NamedParams = std::vector<std::pair<std::string, Mat*>>;
using ConstNamedParams = std::vector<std::pair<std::string, const Mat*>>;

// ---------------------------------------------------------------------------
// LSTM

/// Gate weights stacked row-wise in the order input, candidate, forget,
/// output: rows [0,H) hold W_xi / W_hi / b_i, [H,2H) the candidate g, [2H,3H)
/// the forget gate, [3H,4H) the output gate.
struct LstmParams {
  Mat Wx;  // 4H x D
  Mat Wh;  // 4H x H
  Mat b;   // 4H x 1

  LstmParams() = default;
  LstmParams(int input_dim, int hidden_dim);

  int input_dim() const { return static_cast<int>(Wx.cols()); }
  int hidden_dim() const { return static_cast<int>(Wh.cols()); }

  /// Uniform(-1/sqrt(H), 1/sqrt(H)) weights, forget-gate bias 1.
  void init(SeededRng& rng);
  void append_params(const std::string& prefix, NamedParams& out);
};

struct LstmState {
  Vec h;
  Vec c;

  static LstmState zeros(int hidden_dim);
};

LstmState lstm_step(const Vec& x, const LstmState& state, const LstmParams& p);

/// Everything the backward pass needs from one left-to-right run.
struct LstmTrace {
  Mat X;      // T x D inputs as consumed
  Mat Hprev;  // T x H, h_{k-1}
  Mat Cprev;  // T x H, c_{k-1}
  Mat gates;  // T x 4H activated [i g f o]
  Mat C;      // T x H
  Mat tanhC;  // T x H
  Mat H;      // T x H outputs

  std::size_t steps() const { return static_cast<std::size_t>(X.rows()); }
};

LstmTrace lstm_forward(const LstmParams& p, const Mat& X, const LstmState& init);

/// Trace with room for T steps, filled one step at a time by lstm_step_record
/// (for recurrences whose next input depends on the current state).
LstmTrace lstm_trace(std::size_t T, int input_dim, int hidden_dim);
LstmState lstm_step_record(const Vec& x, const LstmState& state, const LstmParams& p,
                           LstmTrace& trace, std::size_t k);

struct LstmBackward {
  Mat dX;       // T x D
  LstmState d0;  // gradient w.r.t. the initial state
};

/// Accumulates parameter gradients into `grads` given dL/dH (T x H) and the
/// gradient flowing into the final cell state.
LstmBackward lstm_backward(const LstmParams& p, const LstmTrace& trace, const Mat& dH,
                           LstmParams& grads, const Vec* dc_last = nullptr);

struct LstmStepGrad {
  Vec dx;
  Vec dh_prev;
  Vec dc_prev;
};

/// Backward through step k alone, given the total gradients on h_k and c_k.
LstmStepGrad lstm_step_backward(const LstmParams& p, const LstmTrace& trace, std::size_t k,
                                const Vec& dh, const Vec& dc, LstmParams& grads);

// ---------------------------------------------------------------------------
// Bidirectional encoder

struct Encoding {
  Mat H;        // T x 2H, row k = [forward h_k, backward h_k]
  Vec h_fwd_T;  // forward state after the last step
  Vec h_bwd_1;  // backward state after consuming the first step
  LstmTrace fwd;
  LstmTrace bwd;  // over the time-reversed input
};

Encoding encode_bidirectional(const LstmParams& fwd, const LstmParams& bwd, const Mat& X);

/// Backprop of dL/dH (T x 2H) plus extra gradients on the two summary states.
Mat encode_backward(const LstmParams& fwd, const LstmParams& bwd, const Encoding& enc,
                    const Mat& dH, const Vec& d_fwd_T, const Vec& d_bwd_1, LstmParams& g_fwd,
                    LstmParams& g_bwd);

// ---------------------------------------------------------------------------
// Input representation

constexpr int kModelRateHz = 100;
constexpr std::size_t kMaxSteps = 512;
constexpr int kInputChannels = 6;

struct InputNorm {
  Vec mean = Vec::Zero(kInputChannels);
  Vec std = Vec::Ones(kInputChannels);
};

/// T x 6 [accel, gyro] at `rate_hz`, cut to at most `max_steps` rows.
Mat segment_matrix(const MotionSegment& seg, int rate_hz = kModelRateHz,
                   std::size_t max_steps = kMaxSteps);
InputNorm fit_norm(const std::vector<Mat>& inputs);
Mat normalize(const Mat& X, const InputNorm& norm);

// ---------------------------------------------------------------------------
// seq2pwd

struct Seq2PwdConfig {
  int input_dim = kInputChannels;
  int hidden = 64;
};

struct Seq2PwdModel {
  LstmParams fwd, bwd;
  Mat W_hu;  // |P| x 2H
  Mat b_u;   // |P| x 1
  std::vector<Password> classes;
  InputNorm norm;

  Seq2PwdModel() = default;
  Seq2PwdModel(const Seq2PwdConfig& cfg, std::vector<Password> classes);

  int hidden() const { return fwd.hidden_dim(); }
  std::size_t num_classes() const { return static_cast<std::size_t>(W_hu.rows()); }
  void init(SeededRng& rng);
  NamedParams parameters();
  ConstNamedParams parameters() const;
  /// Same shapes, all zero; used as a gradient accumulator.
  Seq2PwdModel zeros_like() const;
};

/// Class probabilities for an already-normalized input.
Vec seq2pwd_forward(const Seq2PwdModel& model, const Mat& X);

// ---------------------------------------------------------------------------
// seq2dgt

/// Output symbols. APL: tokens 0..8 are dots 1..9 and token 9 is EOS. PIN:
/// tokens 0..9 are digits, fixed length 4. Generic vocabularies exist for
/// small exhaustive tests.
struct Vocab {
  std::optional<PasswordKind> kind;
  int size = 10;
  int eos = -1;           // -1 when sequences have a fixed length
  int fixed_length = 0;   // 0 when sequences end on EOS

  static Vocab apl();
  static Vocab pin();
  static Vocab generic(int size, int fixed_length);

  bool has_eos() const { return eos >= 0; }
  /// Token sequence (EOS-terminated for APL) for a password.
  std::vector<int> encode(const Password& p) const;
  /// Password for a terminated token sequence; nullopt if not a valid one.
  std::optional<Password> decode(const std::vector<int>& tokens) const;
};

/// Drops everything from the first EOS on.
std::vector<int> eos_truncate(const std::vector<int>& symbols, int eos);

struct Seq2DgtConfig {
  int input_dim = kInputChannels;
  int hidden = 64;          // per encoder direction
  int decoder_hidden = 128;
  int embed = 16;
  int attention = 0;        // 0: same as decoder_hidden
};

struct Seq2DgtModel {
  LstmParams enc_fwd, enc_bwd, dec;
  Mat W_init, b_init;  // Hd x 2H, Hd x 1
  Mat W_s, W_h, v;     // A x Hd, A x 2H, A x 1
  Mat emb;             // V x E
  Mat sos;             // 1 x E
  Mat W_out, b_out;    // V x (Hd + 2H), V x 1
  Vocab vocab;
  InputNorm norm;

  Seq2DgtModel() = default;
  Seq2DgtModel(const Seq2DgtConfig& cfg, const Vocab& vocab);

  int hidden() const { return enc_fwd.hidden_dim(); }
  int decoder_hidden() const { return dec.hidden_dim(); }
  int embed_dim() const { return static_cast<int>(emb.cols()); }
  void init(SeededRng& rng);
  NamedParams parameters();
  ConstNamedParams parameters() const;
  Seq2DgtModel zeros_like() const;
};

/// Encoder output plus the attention key projection W_h h_k for every step.
struct DgtEncoding {
  Encoding enc;
  Mat keys;  // T x A
};

DgtEncoding seq2dgt_encode(const Seq2DgtModel& model, const Mat& X);
LstmState seq2dgt_initial_state(const Seq2DgtModel& model, const DgtEncoding& enc);

struct Attention {
  Vec context;  // 2H
  Vec weights;  // T
};

/// e_k = v . tanh(W_s s + W_h h_k), a = softmax(e), c = sum_k a_k h_k.
Attention attention(const Seq2DgtModel& model, const Vec& s_prev, const DgtEncoding& enc);

struct DecodeStep {
  Vec log_probs;  // over the vocab
  LstmState next;
  Attention attn;
};

/// One decoder step; y_prev = -1 feeds the start-of-sequence embedding.
DecodeStep seq2dgt_step(const Seq2DgtModel& model, int y_prev, const LstmState& s_prev,
                        const DgtEncoding& enc);

/// Sum over steps of log p(y_k | y_<k, X) under teacher forcing.
double score_sequence(const Seq2DgtModel& model, const Mat& X, const std::vector<int>& tokens);

// ---------------------------------------------------------------------------
// Decoding and ranking

constexpr std::size_t kMaxGuesses = 20;
constexpr std::size_t kDefaultBeamWidth = 32;

struct TokenHypothesis {
  std::vector<int> tokens;  // terminated (including EOS when the vocab has one)
  double log_score = 0.0;
};

/// Whether `token` may extend `prefix`. APL: dots must keep the pattern valid,
/// EOS only after at least four dots.
bool token_allowed(const Vocab& vocab, const std::vector<int>& prefix, int token);

/// Beam search returning up to `k_max` finished hypotheses, best first, ties
/// broken lexicographically.
std::vector<TokenHypothesis> beam_search(const Seq2DgtModel& model, const Mat& X,
                                         std::size_t beam_width, std::size_t k_max);
std::vector<int> greedy_decode(const Seq2DgtModel& model, const Mat& X);

struct Guess {
  Password password;
  double log_score = 0.0;
};
using GuessList = std::vector<Guess>;

GuessList decode_beam(const Seq2DgtModel& model, const Mat& X,
                      std::size_t beam_width = kDefaultBeamWidth, std::size_t k_max = kMaxGuesses);

GuessList rank_guesses(const Seq2PwdModel& model, const Mat& X, std::size_t k);
GuessList rank_guesses(const Seq2DgtModel& model, const Mat& X, std::size_t k);
/// Ranking from an explicit class distribution: probability desc, then index.
GuessList rank_classes(const Vec& probs, const std::vector<Password>& classes, std::size_t k);

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json model_to_json(const Seq2PwdModel& model);
nlohmann::json model_to_json(const Seq2DgtModel& model);
Seq2PwdModel seq2pwd_from_json(const nlohmann::json& j);
Seq2DgtModel seq2dgt_from_json(const nlohmann::json& j);
/// "seq2pwd" or "seq2dgt"; throws on anything else.
std::string model_kind_of(const nlohmann::json& j);

}  // namespace snoopy
