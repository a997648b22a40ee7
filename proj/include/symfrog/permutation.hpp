#pragma once

// P1024-v2: the 24-round, 1024-bit permutation underneath every SymFrog mode.
//
// A round applies, in order: AddRoundConstants (capacity words), Mixer
// (rate ^= capacity), a 4-word chi on each group of four words, the
// multiplicative kick, and rotate+shuffle. All layers are invertible; the
// inverse is provided for testing.

#include <array>
#include <cstdint>
#include <span>

#include "symfrog/common.hpp"

namespace symfrog {

/// 16 x 64-bit words. Words 0..7 are the rate, 8..15 the capacity.
struct State {
  std::array<std::uint64_t, kStateWords> words{};

  std::uint64_t& operator[](std::size_t i) noexcept { return words[i]; }
  std::uint64_t operator[](std::size_t i) const noexcept { return words[i]; }

  /// Little-endian per word; bytes 0..63 are the rate.
  static State from_bytes(std::span<const std::uint8_t, kStateBytes> bytes) noexcept;
  std::array<std::uint8_t, kStateBytes> to_bytes() const noexcept;

  friend bool operator==(const State&, const State&) = default;
};

using RoundConstants = std::array<std::array<std::uint64_t, 8>, kRounds>;

/// RC[r] = first 64 bytes of SHAKE256("SymFrog-rc-v1" || LE32(r)), as 8 LE
/// words. Computes the table from scratch on every call.
RoundConstants derive_round_constants();

/// The process-wide table, derived once on first use.
const RoundConstants& round_constants();

constexpr std::uint64_t rotl64(std::uint64_t x, int k) noexcept { return std::rotl(x, k); }

// --- round layers ---------------------------------------------------------

struct ChiWords {
  std::uint64_t x0, x1, x2, x3;
  friend bool operator==(const ChiWords&, const ChiWords&) = default;
};

/// Sequential chi: each update reads the words already updated before it.
constexpr ChiWords chi4(ChiWords w) noexcept {
  w.x0 ^= ~w.x1 & w.x2;
  w.x1 ^= ~w.x2 & w.x3;
  w.x2 ^= ~w.x3 & w.x0;
  w.x3 ^= ~w.x0 & w.x1;
  return w;
}

constexpr ChiWords inverse_chi4(ChiWords w) noexcept {
  w.x3 ^= ~w.x0 & w.x1;
  w.x2 ^= ~w.x3 & w.x0;
  w.x1 ^= ~w.x2 & w.x3;
  w.x0 ^= ~w.x1 & w.x2;
  return w;
}

void add_round_constants(State& s, const std::array<std::uint64_t, 8>& rc) noexcept;
void mix(State& s) noexcept;
void chi(State& s) noexcept;
void kick(State& s) noexcept;
void rotate_shuffle(State& s) noexcept;

void inverse_kick(State& s) noexcept;
void inverse_chi(State& s) noexcept;
void inverse_rotate_shuffle(State& s) noexcept;

// The word shuffle: new[i] = old[kShuffle[i]].
inline constexpr std::array<std::uint8_t, kStateWords> kShuffle = {
    0, 13, 10, 7, 4, 1, 14, 11, 8, 5, 2, 15, 12, 9, 6, 3};

// --- rounds and the full permutation --------------------------------------

/// One round with index `round` (0..23) using the given table.
void apply_round(State& s, int round, const RoundConstants& rc) noexcept;
void inverse_round(State& s, int round, const RoundConstants& rc) noexcept;

/// The full 24-round permutation.
void permute(State& s) noexcept;

/// The first `rounds` rounds only. Diagnostics use this; modes never do.
void permute_rounds(State& s, int rounds) noexcept;

void inverse_permute(State& s) noexcept;

/// Number of full permutations run on the calling thread since start-up.
std::uint64_t permutation_calls() noexcept;

/// Counts full-permutation calls made on this thread during its lifetime.
class PermutationCounter {
 public:
  PermutationCounter() noexcept : start_(permutation_calls()) {}
  std::uint64_t count() const noexcept { return permutation_calls() - start_; }

 private:
  std::uint64_t start_;
};

}  // namespace symfrog
