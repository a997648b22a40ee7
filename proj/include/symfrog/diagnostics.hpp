#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "symfrog/common.hpp"

namespace symfrog::diagnostics {

// --- avalanche -------------------------------------------------------------

struct RoundStats {
  int round = 0;  // rounds applied; 0 is the input difference itself
  double mean = 0;
  double stddev = 0;  // population
  std::uint32_t min = 0;
  std::uint32_t max = 0;

  friend bool operator==(const RoundStats&, const RoundStats&) = default;
};

struct AvalancheOptions {
  std::size_t trials = 400;
  int max_rounds = kRounds;
  std::uint64_t seed = 0x5EEDF0C5ULL;
};

struct AvalancheReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<RoundStats> rounds;  // index r holds stats after r rounds

  /// Header line then one row per round count, starting at 0.
  /// Columns: round,mean,min,max,stddev.
  std::string to_csv() const;

  friend bool operator==(const AvalancheReport&, const AvalancheReport&) = default;
};

/// One trial: random state from (seed, trial), one random bit flipped, then
/// Hamming distances after 0..max_rounds rounds written to `distances`
/// (size max_rounds + 1). Depends only on (seed, trial).
void avalanche_trial(std::uint64_t seed, std::size_t trial, int max_rounds,
                     std::span<std::uint32_t> distances);

/// Trials run in parallel (OpenMP); result is independent of thread count.
AvalancheReport run_avalanche(const AvalancheOptions& options = {});

/// Single-threaded reference for run_avalanche.
AvalancheReport run_avalanche_serial(const AvalancheOptions& options = {});

// --- benchmark -------------------------------------------------------------

struct BenchOptions {
  std::uint64_t perm_iters = 200000;
  std::size_t buffer_mib = 64;
  int repetitions = 5;
};

struct BenchReport {
  double perm_ns_per_call = 0;
  std::uint64_t perm_iters = 0;
  double aead_mib_per_s = 0;
  std::size_t buffer_mib = 0;
  std::uint64_t aead_perm_calls = 0;  // permutations in one AEAD pass
  int repetitions = 0;

  /// Throughput predicted from the permutation timing alone (64 bytes per
  /// call).
  double predicted_mib_per_s() const;
  std::string to_json() const;
};

/// Permutation latency over perm_iters sequential calls, then AEAD core
/// encryption of a buffer_mib in-memory buffer; each the median of
/// `repetitions` runs. Single-threaded.
BenchReport run_benchmark(const BenchOptions& options = {});

// Non-binding reference figures reported alongside the benchmark.
inline constexpr double kReferencePermNs = 435.1;
inline constexpr double kReferenceAeadMibPerS = 131.7;

// --- regression artifacts -------------------------------------------------

inline constexpr std::array<std::uint64_t, 18> kTestLengths = {
    0, 1, 2, 7, 8, 15, 16, 63, 64, 65, 127, 128, 129, 4096, 65536, 65549, 1048576, 1048583};

/// Deterministic plaintext: FrogHash-512 of LE64(len), extended to len bytes.
Bytes test_plaintext(std::uint64_t len);

/// Fixed raw key (bytes 0x00..0x7F), nonce (0x00..0x1F) and AD ("HEADER").
Key test_key();
Nonce test_nonce();
Bytes test_ad();

struct TestAllReport {
  bool ok = true;
  std::vector<std::uint64_t> failed_lengths;
  std::filesystem::path manifest;
};

/// For every length: writes in_L.bin, enc_L.syf, dec_L.bin to out_dir,
/// checks dec == in and |enc| == L + 184, and writes MANIFEST.sha256
/// ("hex  filename" per line).
TestAllReport run_test_all(const std::filesystem::path& out_dir);

}  // namespace symfrog::diagnostics
