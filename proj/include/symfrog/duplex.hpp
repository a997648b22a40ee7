#pragma once

// Keyed duplex shared by the AEAD, the container header tag, and (through the
// free helpers) FrogHash-512.
//
// Every absorb ends with one padded step, even for empty or block-aligned
// input, so absorb(ds, data) costs floor(|data| / 64) + 1 permutations.

#include <array>
#include <cstdint>
#include <span>

#include "symfrog/common.hpp"
#include "symfrog/permutation.hpp"

namespace symfrog {

/// One-byte phase constant XORed into the low byte of S[15] before a
/// permutation call.
enum class DomainByte : std::uint8_t {
  AssociatedData = 0xA0,
  Ciphertext = 0xC0,
  Tag = 0xF0,
  Header = 0xB0,
  HeaderTag = 0xB1,
};

using OutputBlock = std::array<std::uint8_t, kRateBytes>;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64_finalize(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// Squeeze transform: mixes each rate word with two rotated capacity words
/// and a per-lane constant, then finalizes with SplitMix64. Does not modify
/// the state.
OutputBlock output_block(const State& s) noexcept;

/// XOR mask for a final partial block of `tail.size()` (< 64) bytes: the tail
/// bytes, 0x80 at position |tail|, 0x01 at position 63.
OutputBlock pad_rate_tail(ByteView tail);

/// S_R ^= block (64 bytes, LE words).
void xor_into_rate(State& s, std::span<const std::uint8_t, kRateBytes> block) noexcept;

inline void xor_domain(State& s, DomainByte ds) noexcept {
  s[15] ^= static_cast<std::uint64_t>(ds);
}

class Duplex {
 public:
  enum class Phase { Initialized, AbsorbingAD, Streaming, Finalized };

  /// S = K; S[12..15] ^= N; S[8..11] ^= identifier; permute.
  Duplex(ByteView key, ByteView nonce);
  Duplex(const Key& key, const Nonce& nonce) : Duplex(ByteView(key.span()), ByteView(nonce)) {}

  Duplex(const Duplex&) = default;
  Duplex& operator=(const Duplex&) = default;
  ~Duplex();

  /// Domain-separated absorption with the mandatory final padded step.
  /// Accepts AssociatedData or Header, before any streaming.
  void absorb(DomainByte ds, ByteView data);

  /// Full-block duplexing: out = in ^ Out(S); S_R ^= ciphertext; DS_CT; P.
  void encrypt_block(std::span<const std::uint8_t, kRateBytes> in,
                     std::span<std::uint8_t, kRateBytes> out);
  void decrypt_block(std::span<const std::uint8_t, kRateBytes> in,
                     std::span<std::uint8_t, kRateBytes> out);

  /// Final partial block (0..63 bytes, may be empty). Closes the stream.
  void encrypt_tail(ByteView in, std::span<std::uint8_t> out);
  void decrypt_tail(ByteView in, std::span<std::uint8_t> out);

  /// S[15] ^= ds; P; first 32 bytes of Out(S). `Tag` requires a closed
  /// ciphertext stream; `HeaderTag` requires an absorb and no streaming.
  Tag finalize(DomainByte ds);

  Phase phase() const noexcept { return phase_; }
  const State& state() const noexcept { return state_; }

 private:
  void require_streamable() const;
  void absorb_ciphertext_tail(ByteView ct);

  State state_;
  Phase phase_ = Phase::Initialized;
  bool stream_closed_ = false;
};

/// The 24-byte identifier block ("SYMFROG-512-AEAD-v1", zero padded) and the
/// version word XORed into S[8..11] at initialization.
inline constexpr std::array<std::uint64_t, 4> kAeadIdentifierWords = [] {
  constexpr char text[] = "SYMFROG-512-AEAD-v1";
  std::array<std::uint8_t, 24> bytes{};
  for (std::size_t i = 0; i + 1 < sizeof(text); ++i) bytes[i] = static_cast<std::uint8_t>(text[i]);
  return std::array<std::uint64_t, 4>{load64_le(bytes.data()), load64_le(bytes.data() + 8),
                                      load64_le(bytes.data() + 16), 1};
}();

}  // namespace symfrog
