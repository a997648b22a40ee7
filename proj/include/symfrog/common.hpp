#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symfrog {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::size_t kStateWords = 16;
inline constexpr std::size_t kRateWords = 8;
inline constexpr std::size_t kStateBytes = 128;
inline constexpr std::size_t kRateBytes = 64;
inline constexpr std::size_t kKeyBytes = 128;
inline constexpr std::size_t kNonceBytes = 32;
inline constexpr std::size_t kTagBytes = 32;
inline constexpr std::size_t kSaltBytes = 32;
inline constexpr int kRounds = 24;

// Golden-ratio constant shared by the kick layer and the output transform.
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// ---------------------------------------------------------------------------
// Errors. Verdicts (auth failures, format rejects) are return values; these
// cover everything else.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LengthError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PhaseError : std::logic_error {
  using std::logic_error::logic_error;
};
struct IoError : Error {
  using Error::Error;
};
struct KdfError : Error {
  using Error::Error;
};
struct RngError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------

constexpr std::uint64_t load64_le(const std::uint8_t* p) noexcept {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

constexpr void store64_le(std::uint8_t* p, std::uint64_t v) noexcept {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

constexpr std::uint32_t load32_le(const std::uint8_t* p) noexcept {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

constexpr void store32_le(std::uint8_t* p, std::uint32_t v) noexcept {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

/// Overwrites memory in a way the optimizer may not elide.
void secure_zero(void* p, std::size_t n) noexcept;

/// Fixed-size secret byte array that wipes itself on destruction.
template <std::size_t N>
class SecretArray {
 public:
  SecretArray() = default;
  explicit SecretArray(ByteView bytes) {
    if (bytes.size() != N) {
      throw LengthError("expected " + std::to_string(N) + " bytes, got " +
                        std::to_string(bytes.size()));
    }
    std::copy(bytes.begin(), bytes.end(), data_.begin());
  }
  SecretArray(const SecretArray&) = default;
  SecretArray& operator=(const SecretArray&) = default;
  ~SecretArray() { secure_zero(data_.data(), N); }

  static constexpr std::size_t size() noexcept { return N; }
  std::uint8_t* data() noexcept { return data_.data(); }
  const std::uint8_t* data() const noexcept { return data_.data(); }
  std::span<std::uint8_t, N> span() noexcept { return data_; }
  std::span<const std::uint8_t, N> span() const noexcept { return data_; }
  std::uint8_t& operator[](std::size_t i) noexcept { return data_[i]; }
  std::uint8_t operator[](std::size_t i) const noexcept { return data_[i]; }

  friend bool operator==(const SecretArray&, const SecretArray&) = default;

 private:
  std::array<std::uint8_t, N> data_{};
};

using Key = SecretArray<kKeyBytes>;
using Nonce = std::array<std::uint8_t, kNonceBytes>;
using Tag = std::array<std::uint8_t, kTagBytes>;
using Salt = std::array<std::uint8_t, kSaltBytes>;

/// Lowercase hex encoding.
std::string to_hex(ByteView bytes);

/// Case-insensitive hex decoding; throws std::invalid_argument on odd length
/// or a non-hex character.
Bytes from_hex(std::string_view hex);

/// Compares two equal-length buffers without early exit. Returns false on a
/// length mismatch.
bool constant_time_eq(ByteView a, ByteView b) noexcept;

}  // namespace symfrog
