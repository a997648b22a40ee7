// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "support/keccak_oracle.hpp"
#include "support/subprocess.hpp"
#include "support/test_util.hpp"
#include "symfrog/aead.hpp"
#include "symfrog/container.hpp"
#include "symfrog/diagnostics.hpp"
#include "symfrog/permutation.hpp"
#include "symfrog/xof.hpp"

using namespace symfrog;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr double kRoundtripBudgetSeconds = 60.0;
constexpr double kAvalancheMeanLo = 504.0;
constexpr double kAvalancheMeanHi = 520.0;
constexpr double kAvalancheSdLo = 8.0;
constexpr double kAvalancheSdHi = 32.0;
constexpr double kAvalancheBudgetSeconds = 30.0;
constexpr std::size_t kAvalancheTrials = 400;
constexpr double kThroughputFactor = 3.0;
constexpr char kEmptySha256[] = "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string counting_key_hex() { return to_hex(diagnostics::test_key().span()); }

// Shared between criteria 1 and 2.
struct RoundtripArtifacts {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_sizes;   // (L, |enc|)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pass_sizes;  // (L, |enc|)
};

Outcome criterion_roundtrip(const fs::path& work, RoundtripArtifacts& art) {
  const fs::path dir = work / "roundtrip";
  fs::create_directories(dir);
  const std::string ad_hex = to_hex(diagnostics::test_ad());
  std::vector<std::string> failures;
  const auto t0 = Clock::now();
  for (const std::uint64_t len : diagnostics::kTestLengths) {
    const std::string s = std::to_string(len);
    const fs::path in = dir / ("in_" + s + ".bin");
    const Bytes plain = diagnostics::test_plaintext(len);
    write_file_atomic(in, plain);

    struct Mode {
      const char* name;
      std::vector<std::string> key_args;
      std::vector<std::pair<std::uint64_t, std::uint64_t>>* sizes;
    };
    const Mode modes[] = {{"key-hex", {"--key-hex", counting_key_hex()}, &art.raw_sizes},
                          {"pass", {"--pass", "mypw"}, &art.pass_sizes}};
    for (const Mode& m : modes) {
      const fs::path enc = dir / ("enc_" + s + "_" + m.name + ".syf");
      const fs::path dec = dir / ("dec_" + s + "_" + m.name + ".bin");
      std::vector<std::string> enc_args{"enc", in.string(), enc.string(), "--ad", ad_hex, "-q"};
      std::vector<std::string> dec_args{"dec", enc.string(), dec.string(), "--ad", ad_hex, "-q"};
      enc_args.insert(enc_args.end(), m.key_args.begin(), m.key_args.end());
      dec_args.insert(dec_args.end(), m.key_args.begin(), m.key_args.end());

      const auto re = testutil::run_process(SYMFROG_CLI_PATH, enc_args, dir);
      const auto rd = re.exit_code == 0 ? testutil::run_process(SYMFROG_CLI_PATH, dec_args, dir) : re;
      const bool ok = re.exit_code == 0 && rd.exit_code == 0 && fs::exists(dec) && read_file(dec) == plain;
      if (!ok) failures.push_back(s + "/" + m.name);
      if (fs::exists(enc)) m.sizes->emplace_back(len, fs::file_size(enc));
      fs::remove(dec);
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << diagnostics::kTestLengths.size() << " lengths x {key-hex, pass} via CLI, " << failures.size()
    << " mismatches, " << elapsed << " s (limit " << kRoundtripBudgetSeconds << " s)";
  for (const auto& f : failures) d << " [" << f << "]";
  return {failures.empty() && elapsed < kRoundtripBudgetSeconds, d.str()};
}

Outcome criterion_size_law(const RoundtripArtifacts& art) {
  std::size_t bad = 0, checked = 0;
  for (const auto* sizes : {&art.raw_sizes, &art.pass_sizes}) {
    for (const auto& [len, size] : *sizes) {
      ++checked;
      if (size != len + container::kOverheadBytes) ++bad;
    }
  }
  const std::size_t expected = 2 * diagnostics::kTestLengths.size();
  std::ostringstream d;
  d << checked << "/" << expected << " files checked, " << bad << " with |enc| != L + 184";
  return {checked == expected && bad == 0, d.str()};
}

Outcome criterion_empty_checksum(const fs::path& work) {
  const fs::path dir = work / "test_all";
  const auto report = diagnostics::run_test_all(dir);
  const std::string in0 = to_hex(sha256_file(dir / "in_0.bin"));
  const std::string dec0 = to_hex(sha256_file(dir / "dec_0.bin"));
  std::ostringstream d;
  d << "SHA-256(in_0.bin) = " << in0 << ", dec_0.bin " << (dec0 == in0 ? "identical" : "DIFFERS")
    << ", test-all " << (report.ok ? "ok" : "FAILED");
  return {in0 == kEmptySha256 && dec0 == in0 && report.ok, d.str()};
}

Outcome criterion_avalanche() {
  diagnostics::AvalancheOptions o;
  o.trials = kAvalancheTrials;
  const auto t0 = Clock::now();
  const auto report = diagnostics::run_avalanche(o);
  const double elapsed = seconds_since(t0);
  double lo = 1e9, hi = -1e9;
  for (int r = 5; r <= kRounds; ++r) {
    lo = std::min(lo, report.rounds[static_cast<std::size_t>(r)].mean);
    hi = std::max(hi, report.rounds[static_cast<std::size_t>(r)].mean);
  }
  const double sd24 = report.rounds[kRounds].stddev;
  const bool same_as_serial = diagnostics::run_avalanche_serial(o) == report;
  std::ostringstream d;
  d << o.trials << " trials: rounds 5..24 mean in [" << lo << ", " << hi << "] (band [" << kAvalancheMeanLo
    << ", " << kAvalancheMeanHi << "]), round-24 stddev " << sd24 << " (band [" << kAvalancheSdLo << ", "
    << kAvalancheSdHi << "]), " << elapsed << " s (limit " << kAvalancheBudgetSeconds
    << " s), parallel==serial " << (same_as_serial ? "yes" : "NO");
  const bool pass = lo >= kAvalancheMeanLo && hi <= kAvalancheMeanHi && sd24 >= kAvalancheSdLo &&
                    sd24 <= kAvalancheSdHi && elapsed < kAvalancheBudgetSeconds && same_as_serial;
  return {pass, d.str()};
}

Outcome criterion_tamper(const fs::path& work) {
  const fs::path dir = work / "tamper";
  fs::create_directories(dir);
  const Key key = diagnostics::test_key();
  const Bytes ad = diagnostics::test_ad();
  write_file_atomic(dir / "msg.bin", Bytes{'a', 'b', 'c'});
  container::encrypt_file(dir / "msg.bin", dir / "msg.syf", key, ad);
  const Bytes file = read_file(dir / "msg.syf");

  std::size_t flips = 0, accepted = 0, leaked = 0;
  for (std::size_t bit = 0; bit < 8 * file.size(); ++bit) {
    Bytes t = file;
    t[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    write_file_atomic(dir / "t.syf", t);
    const auto v = container::decrypt_file(dir / "t.syf", dir / "out.bin", key, ad);
    ++flips;
    if (v == container::Verdict::Ok) ++accepted;
    if (fs::exists(dir / "out.bin")) {
      ++leaked;
      fs::remove(dir / "out.bin");
    }
  }
  // Only msg.bin, msg.syf and t.syf may remain: no temporaries either.
  const auto entries = std::distance(fs::directory_iterator(dir), fs::directory_iterator{});
  std::ostringstream d;
  d << flips << " single-bit flips of a " << file.size() << "-byte file: " << accepted << " accepted, "
    << leaked << " left output, " << entries << " files in scratch dir";
  return {file.size() == 152 + 3 + 32 && flips == 8 * 187 && accepted == 0 && leaked == 0 && entries == 3,
          d.str()};
}

Outcome criterion_early_reject() {
  const Key key = diagnostics::test_key();
  const Bytes plain(1 << 20, 0x5A);

  auto body_bytes_read = [&](const Bytes& file, const container::KeySource& wrong,
                             container::Verdict& verdict) {
    MemorySource mem(file);
    CountingSource counting(mem);
    NullSink sink;
    verdict = container::decrypt(counting, file.size(), sink, wrong, {});
    return counting.bytes_read() - std::min<std::uint64_t>(counting.bytes_read(), container::kHeaderBytes);
  };

  MemorySource src(plain);
  MemorySink raw_file;
  container::encrypt(src, plain.size(), raw_file, key, {});
  Key wrong = key;
  wrong[64] ^= 1;
  container::Verdict v1{};
  const auto raw_read = body_bytes_read(raw_file.bytes, wrong, v1);

  MemorySource src2(plain);
  MemorySink pass_file;
  container::encrypt(src2, plain.size(), pass_file, container::Passphrase("right", kdf::kModerate), {});
  container::Verdict v2{};
  const auto pass_read = body_bytes_read(pass_file.bytes, container::Passphrase("wrong", kdf::kModerate), v2);

  std::ostringstream d;
  d << "wrong raw key: " << container::to_string(v1) << ", " << raw_read
    << " body bytes read; wrong passphrase: " << container::to_string(v2) << ", " << pass_read
    << " body bytes read";
  return {v1 == container::Verdict::HeaderAuthFail && v2 == container::Verdict::HeaderAuthFail &&
              raw_read == 0 && pass_read == 0,
          d.str()};
}

Outcome criterion_bijectivity() {
  std::mt19937_64 rng(0xB17EC7);
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const State s = testutil::random_state(rng);
    State t = s;
    permute(t);
    inverse_permute(t);
    if (!(t == s)) ++mismatches;
  }
  constexpr std::uint64_t ones = ~std::uint64_t{0};
  std::set<unsigned> images;
  for (unsigned v = 0; v < 16; ++v) {
    const ChiWords out =
        chi4({(v & 1) ? ones : 0, (v & 2) ? ones : 0, (v & 4) ? ones : 0, (v & 8) ? ones : 0});
    images.insert(static_cast<unsigned>((out.x0 & 1) | (out.x1 & 1) << 1 | (out.x2 & 1) << 2 |
                                        (out.x3 & 1) << 3));
  }
  std::ostringstream d;
  d << "1000 random states: " << mismatches << " roundtrip mismatches; chi4 slice images: " << images.size()
    << "/16 distinct";
  return {mismatches == 0 && images.size() == 16, d.str()};
}

Outcome criterion_oracle() {
  const RoundConstants& rc = round_constants();
  std::size_t words = 0, mismatches = 0;
  for (std::uint32_t r = 0; r < kRounds; ++r) {
    std::vector<std::uint8_t> in{'S', 'y', 'm', 'F', 'r', 'o', 'g', '-', 'r', 'c', '-', 'v', '1'};
    for (int k = 0; k < 4; ++k) in.push_back(static_cast<std::uint8_t>(r >> (8 * k)));
    const auto out = keccak_oracle::shake256(in, 64);
    for (std::size_t j = 0; j < 8; ++j) {
      ++words;
      if (rc[r][j] != load64_le(out.data() + 8 * j)) ++mismatches;
    }
  }
  std::ostringstream d;
  d << words << " words compared against an independent SHAKE256, " << mismatches << " mismatches";
  return {words == 24 * 8 && mismatches == 0, d.str()};
}

Outcome criterion_call_accounting() {
  const std::pair<std::size_t, std::size_t> pairs[] = {
      {0, 0},   {0, 1},    {1, 0},    {0, 63},   {0, 64},   {0, 65},    {63, 0},
      {64, 0},  {65, 0},   {63, 63},  {64, 64},  {65, 65},  {127, 128}, {128, 127},
      {6, 100}, {200, 17}, {17, 200}, {0, 4096}, {4096, 1}, {1000, 65549}};
  static_assert(std::size(pairs) == 20);
  std::mt19937_64 rng(0xCA11);
  std::size_t bad = 0;
  for (const auto& [ad_len, p_len] : pairs) {
    aead::Params params;
    params.key = testutil::random_key(rng);
    params.nonce = testutil::random_nonce(rng);
    params.ad = testutil::random_bytes(rng, ad_len);
    const Bytes p = testutil::random_bytes(rng, p_len);
    const std::uint64_t predicted = 1 + (ad_len / 64 + 1) + (p_len / 64 + 1) + 1;

    const PermutationCounter enc_count;
    const auto sealed = aead::encrypt(params, p);
    const std::uint64_t enc_calls = enc_count.count();
    const PermutationCounter dec_count;
    const bool ok = aead::decrypt(params, sealed.ciphertext, sealed.tag).has_value();
    const std::uint64_t dec_calls = dec_count.count();
    if (enc_calls != predicted || dec_calls != predicted || !ok) ++bad;
  }
  std::ostringstream d;
  d << std::size(pairs) << " (|AD|, |P|) pairs, encrypt and decrypt: " << bad << " differ from 1 + (|AD|/64+1) + (|P|/64+1) + 1";
  return {bad == 0, d.str()};
}

Outcome criterion_benchmark() {
  const auto r = diagnostics::run_benchmark();
  const double predicted = r.predicted_mib_per_s();
  const double ratio = predicted > 0 ? r.aead_mib_per_s / predicted : 0;
  std::ostringstream d;
  d << r.perm_ns_per_call << " ns/call (reference " << diagnostics::kReferencePermNs << "), "
    << r.aead_mib_per_s << " MiB/s on " << r.buffer_mib << " MiB (reference " << diagnostics::kReferenceAeadMibPerS
    << "); permutation-predicted " << predicted << " MiB/s, ratio " << ratio << " (allowed 1/"
    << kThroughputFactor << ".." << kThroughputFactor << ")";
  const bool pass = r.perm_ns_per_call > 0 && r.aead_mib_per_s > 0 && ratio >= 1.0 / kThroughputFactor &&
                    ratio <= kThroughputFactor;
  return {pass, d.str()};
}

Outcome criterion_nonce_reuse() {
  std::mt19937_64 rng(0x2E05E);
  std::size_t cases = 0, bad = 0;
  for (std::size_t len = 1; len <= 64; ++len) {
    aead::Params params;
    params.key = testutil::random_key(rng);
    params.nonce = testutil::random_nonce(rng);
    params.ad = testutil::random_bytes(rng, len % 9);
    const Bytes p1 = testutil::random_bytes(rng, len);
    const Bytes p2 = testutil::random_bytes(rng, len);
    const Bytes c1 = aead::encrypt(params, p1).ciphertext;
    const Bytes c2 = aead::encrypt(params, p2).ciphertext;
    ++cases;
    for (std::size_t i = 0; i < len; ++i) {
      if ((c1[i] ^ c2[i]) != (p1[i] ^ p2[i])) {
        ++bad;
        break;
      }
    }
  }
  std::ostringstream d;
  d << cases << " single-block message pairs under a reused (K, N): " << bad << " where C1^C2 != P1^P2";
  return {bad == 0, d.str()};
}

}  // namespace

int main() {
  testutil::TempDir work;
  RoundtripArtifacts artifacts;
  int failed = 0;

  auto report = [&](int number, const char* name, const std::function<Outcome()>& fn) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %2d  %-22s %s  (%.2f s)\n", o.pass ? "PASS" : "FAIL", number, name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  };

  report(1, "roundtrip-cli", [&] { return criterion_roundtrip(work.path(), artifacts); });
  report(2, "size-law", [&] { return criterion_size_law(artifacts); });
  report(3, "empty-file-checksum", [&] { return criterion_empty_checksum(work.path()); });
  report(4, "avalanche", criterion_avalanche);
  report(5, "tamper-exhaustive", [&] { return criterion_tamper(work.path()); });
  report(6, "early-reject", criterion_early_reject);
  report(7, "bijectivity", criterion_bijectivity);
  report(8, "round-constant-oracle", criterion_oracle);
  report(9, "call-accounting", criterion_call_accounting);
  report(10, "benchmark", criterion_benchmark);
  report(11, "nonce-reuse", criterion_nonce_reuse);

  std::printf("%s: %d of 11 criteria failed\n", failed == 0 ? "ALL PASS" : "FAILURES", failed);
  return failed == 0 ? 0 : 1;
}
