#include "symfrog/permutation.hpp"

#include "symfrog/xof.hpp"

namespace symfrog {

namespace {

thread_local std::uint64_t tl_permutation_calls = 0;

// Layer bodies are force-inlined into the round loop; the public functions
// below are thin wrappers for tests.

[[gnu::always_inline]] inline void add_rc_impl(State& s, const std::array<std::uint64_t, 8>& rc) {
  for (std::size_t j = 0; j < 8; ++j) s[8 + j] ^= rc[j];
}

[[gnu::always_inline]] inline void mix_impl(State& s) {
  for (std::size_t i = 0; i < kRateWords; ++i) s[i] ^= s[i + 8];
}

[[gnu::always_inline]] inline void chi_impl(State& s) {
  for (std::size_t g = 0; g < kStateWords; g += 4) {
    const ChiWords w = chi4({s[g], s[g + 1], s[g + 2], s[g + 3]});
    s[g] = w.x0;
    s[g + 1] = w.x1;
    s[g + 2] = w.x2;
    s[g + 3] = w.x3;
  }
}

// Phase A: even words feed odd words.
[[gnu::always_inline]] inline void kick_phase_a(State& s) {
  for (std::size_t i = 0; i < kStateWords; i += 2) {
    const std::uint64_t m = s[i] | 1;
    s[i + 1] ^= s[i] * m;
  }
}

// Phase B: odd words feed even words; word 15 wraps to word 0.
[[gnu::always_inline]] inline void kick_phase_b(State& s) {
  for (std::size_t i = 1; i < kStateWords; i += 2) {
    const std::uint64_t m = s[i] | 1;
    const std::uint64_t k = s[i] * (m ^ kGolden);
    s[(i + 1) % kStateWords] ^= rotl64(k, 23);
  }
}

constexpr int rotation_for(std::size_t index) { return index % 2 == 0 ? 19 : 61; }

[[gnu::always_inline]] inline void rotate_shuffle_impl(State& s) {
  std::array<std::uint64_t, kStateWords> rotated;
  for (std::size_t i = 0; i < kStateWords; ++i) rotated[i] = rotl64(s[i], rotation_for(i));
  for (std::size_t i = 0; i < kStateWords; ++i) s[i] = rotated[kShuffle[i]];
}

[[gnu::always_inline]] inline void round_impl(State& s, const std::array<std::uint64_t, 8>& rc) {
  add_rc_impl(s, rc);
  mix_impl(s);
  chi_impl(s);
  kick_phase_a(s);
  kick_phase_b(s);
  rotate_shuffle_impl(s);
}

}  // namespace

State State::from_bytes(std::span<const std::uint8_t, kStateBytes> bytes) noexcept {
  State s;
  for (std::size_t i = 0; i < kStateWords; ++i) s[i] = load64_le(bytes.data() + 8 * i);
  return s;
}

std::array<std::uint8_t, kStateBytes> State::to_bytes() const noexcept {
  std::array<std::uint8_t, kStateBytes> out;
  for (std::size_t i = 0; i < kStateWords; ++i) store64_le(out.data() + 8 * i, words[i]);
  return out;
}

RoundConstants derive_round_constants() {
  static constexpr std::string_view kLabel = "SymFrog-rc-v1";
  RoundConstants rc{};
  for (std::uint32_t r = 0; r < static_cast<std::uint32_t>(kRounds); ++r) {
    Bytes input(kLabel.begin(), kLabel.end());
    std::array<std::uint8_t, 4> ctr;
    store32_le(ctr.data(), r);
    input.insert(input.end(), ctr.begin(), ctr.end());
    const Bytes out = shake256(input, 64);
    for (std::size_t j = 0; j < 8; ++j) rc[r][j] = load64_le(out.data() + 8 * j);
  }
  return rc;
}

const RoundConstants& round_constants() {
  static const RoundConstants table = derive_round_constants();
  return table;
}

void add_round_constants(State& s, const std::array<std::uint64_t, 8>& rc) noexcept { add_rc_impl(s, rc); }
void mix(State& s) noexcept { mix_impl(s); }
void chi(State& s) noexcept { chi_impl(s); }

void kick(State& s) noexcept {
  kick_phase_a(s);
  kick_phase_b(s);
}

void rotate_shuffle(State& s) noexcept { rotate_shuffle_impl(s); }

// Each kick phase only writes words the same phase never reads, so each is
// an involution and the inverse runs them in reverse order.
void inverse_kick(State& s) noexcept {
  kick_phase_b(s);
  kick_phase_a(s);
}

void inverse_chi(State& s) noexcept {
  for (std::size_t g = 0; g < kStateWords; g += 4) {
    const ChiWords w = inverse_chi4({s[g], s[g + 1], s[g + 2], s[g + 3]});
    s[g] = w.x0;
    s[g + 1] = w.x1;
    s[g + 2] = w.x2;
    s[g + 3] = w.x3;
  }
}

void inverse_rotate_shuffle(State& s) noexcept {
  std::array<std::uint64_t, kStateWords> rotated;
  for (std::size_t i = 0; i < kStateWords; ++i) rotated[kShuffle[i]] = s[i];
  for (std::size_t i = 0; i < kStateWords; ++i) s[i] = std::rotr(rotated[i], rotation_for(i));
}

void apply_round(State& s, int round, const RoundConstants& rc) noexcept {
  round_impl(s, rc[static_cast<std::size_t>(round)]);
}

void inverse_round(State& s, int round, const RoundConstants& rc) noexcept {
  inverse_rotate_shuffle(s);
  inverse_kick(s);
  inverse_chi(s);
  mix_impl(s);
  add_rc_impl(s, rc[static_cast<std::size_t>(round)]);
}

void permute(State& s) noexcept {
  const RoundConstants& rc = round_constants();
  for (int r = 0; r < kRounds; ++r) round_impl(s, rc[static_cast<std::size_t>(r)]);
  ++tl_permutation_calls;
}

void permute_rounds(State& s, int rounds) noexcept {
  const RoundConstants& rc = round_constants();
  for (int r = 0; r < rounds; ++r) round_impl(s, rc[static_cast<std::size_t>(r)]);
}

void inverse_permute(State& s) noexcept {
  const RoundConstants& rc = round_constants();
  for (int r = kRounds - 1; r >= 0; --r) inverse_round(s, r, rc);
}

std::uint64_t permutation_calls() noexcept { return tl_permutation_calls; }

}  // namespace symfrog
