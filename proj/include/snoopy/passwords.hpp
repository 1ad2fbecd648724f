#pragma once

// Password label space: 4-digit PINs and Android pattern locks (APLs) on a
// 3x3 grid, exhaustive APL enumeration, and popularity-weighted databases.

#include "snoopy/numerics.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace snoopy {

enum class PasswordKind { pin, apl };

std::string to_string(PasswordKind kind);
PasswordKind password_kind_from_string(const std::string& s);

struct Pin {
  std::array<int, 4> digits{};

  friend bool operator==(const Pin&, const Pin&) = default;
  friend auto operator<=>(const Pin&, const Pin&) = default;
};

/// Dots are numbered row-major 1..9 (1 top-left, 9 bottom-right).
struct AplPattern {
  std::vector<int> dots;

  friend bool operator==(const AplPattern&, const AplPattern&) = default;
  friend auto operator<=>(const AplPattern&, const AplPattern&) = default;
};

using Password = std::variant<Pin, AplPattern>;

PasswordKind kind_of(const Password& p);
/// Digit (PIN) or dot (APL) sequence.
std::vector<int> symbols_of(const Password& p);
Password make_password(PasswordKind kind, std::span<const int> symbols);
std::string to_string(const Password& p);

constexpr std::size_t kPinSpaceSize = 10000;
constexpr std::size_t kAplSpaceSize = 389112;
constexpr int kAplMinLength = 4;
constexpr int kAplMaxLength = 9;

/// The dot strictly between a and b on a grid line, or 0 when they are not
/// separated by exactly one dot.
int apl_midpoint(int a, int b);

bool apl_is_valid(std::span<const int> dots);

/// True when `dots` can still be extended to a valid pattern: distinct dots in
/// range and every move obeys the midpoint rule. Length is not checked.
bool apl_is_valid_prefix(std::span<const int> dots);

struct AplEnumeration {
  std::uint64_t total = 0;
  /// per_length[k] counts patterns with k dots (indices 4..9 used).
  std::array<std::uint64_t, 10> per_length{};
};

/// Depth-first enumeration in lexicographic order. `visit` (optional) sees
/// every valid pattern as it is emitted.
AplEnumeration enumerate_apls(const std::function<void(std::span<const int>)>& visit = {});

/// Every valid APL in enumeration order.
std::vector<AplPattern> list_apls();

std::vector<Pin> list_pins();

struct PasswordEntry {
  Password password;
  double weight = 0.0;
};

struct PasswordDb {
  PasswordKind kind = PasswordKind::apl;
  std::vector<PasswordEntry> entries;

  std::size_t size() const { return entries.size(); }
  /// Index of `p` in entry order, if present.
  std::optional<std::size_t> index_of(const Password& p) const;
};

/// `size` distinct passwords drawn uniformly from the valid space, with
/// Zipf(skew) popularity by draw rank, normalized to sum to one.
PasswordDb sample_db(SeededRng& rng, PasswordKind kind, std::size_t size, double skew);

const Password& draw_password(SeededRng& rng, const PasswordDb& db);

/// Draws `count` distinct entries without replacement, proportional to weight.
std::vector<std::size_t> draw_distinct(SeededRng& rng, const PasswordDb& db, std::size_t count);

Pin random_pin(SeededRng& rng);
/// Uniform length 4..9, then a random walk over valid extensions.
AplPattern random_apl(SeededRng& rng);

void to_json(nlohmann::json& j, const Password& p);
void from_json(const nlohmann::json& j, Password& p);
void to_json(nlohmann::json& j, const PasswordDb& db);
void from_json(const nlohmann::json& j, PasswordDb& db);

}  // namespace snoopy
