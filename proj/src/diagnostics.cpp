#include "symfrog/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "symfrog/aead.hpp"
#include "symfrog/container.hpp"
#include "symfrog/froghash.hpp"
#include "symfrog/permutation.hpp"
#include "symfrog/xof.hpp"

namespace symfrog::diagnostics {

// --- avalanche -------------------------------------------------------------

namespace {

std::uint32_t hamming(const State& a, const State& b) {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kStateWords; ++i) d += static_cast<std::uint32_t>(std::popcount(a[i] ^ b[i]));
  return d;
}

void check_options(const AvalancheOptions& o) {
  if (o.trials == 0) throw std::invalid_argument("avalanche needs at least one trial");
  if (o.max_rounds < 0 || o.max_rounds > kRounds) {
    throw std::invalid_argument("avalanche rounds must be in 0..24");
  }
}

AvalancheReport aggregate(const AvalancheOptions& o, const std::vector<std::uint32_t>& dist) {
  const std::size_t width = static_cast<std::size_t>(o.max_rounds) + 1;
  AvalancheReport report;
  report.trials = o.trials;
  report.seed = o.seed;
  for (std::size_t r = 0; r < width; ++r) {
    RoundStats st;
    st.round = static_cast<int>(r);
    st.min = std::numeric_limits<std::uint32_t>::max();
    double sum = 0;
    for (std::size_t t = 0; t < o.trials; ++t) {
      const std::uint32_t d = dist[t * width + r];
      sum += d;
      st.min = std::min(st.min, d);
      st.max = std::max(st.max, d);
    }
    st.mean = sum / static_cast<double>(o.trials);
    double sq = 0;
    for (std::size_t t = 0; t < o.trials; ++t) {
      const double dev = dist[t * width + r] - st.mean;
      sq += dev * dev;
    }
    st.stddev = std::sqrt(sq / static_cast<double>(o.trials));
    report.rounds.push_back(st);
  }
  return report;
}

}  // namespace

void avalanche_trial(std::uint64_t seed, std::size_t trial, int max_rounds,
                     std::span<std::uint32_t> distances) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);

  State a;
  for (auto& w : a.words) w = rng();
  const std::uint64_t bit = rng() % (kStateWords * 64);
  State b = a;
  b[bit / 64] ^= std::uint64_t{1} << (bit % 64);

  const RoundConstants& rc = round_constants();
  distances[0] = hamming(a, b);
  for (int r = 0; r < max_rounds; ++r) {
    apply_round(a, r, rc);
    apply_round(b, r, rc);
    distances[static_cast<std::size_t>(r) + 1] = hamming(a, b);
  }
}

AvalancheReport run_avalanche(const AvalancheOptions& o) {
  check_options(o);
  const std::size_t width = static_cast<std::size_t>(o.max_rounds) + 1;
  std::vector<std::uint32_t> dist(o.trials * width);
  (void)round_constants();  // initialize outside the parallel region

  const auto trials = static_cast<std::int64_t>(o.trials);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto ut = static_cast<std::size_t>(t);
    avalanche_trial(o.seed, ut, o.max_rounds, std::span(dist).subspan(ut * width, width));
  }
  return aggregate(o, dist);
}

AvalancheReport run_avalanche_serial(const AvalancheOptions& o) {
  check_options(o);
  const std::size_t width = static_cast<std::size_t>(o.max_rounds) + 1;
  std::vector<std::uint32_t> dist(o.trials * width);
  for (std::size_t t = 0; t < o.trials; ++t) {
    avalanche_trial(o.seed, t, o.max_rounds, std::span(dist).subspan(t * width, width));
  }
  return aggregate(o, dist);
}

std::string AvalancheReport::to_csv() const {
  std::ostringstream os;
  os << "round,mean,min,max,stddev\n";
  os.setf(std::ios::fixed);
  os.precision(4);
  for (const auto& r : rounds) {
    os << r.round << ',' << r.mean << ',' << r.min << ',' << r.max << ',' << r.stddev << '\n';
  }
  return os.str();
}

// --- benchmark -------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Writes into a preallocated buffer so the timing excludes allocation.
class BufferSink final : public ByteSink {
 public:
  explicit BufferSink(std::span<std::uint8_t> buf) : buf_(buf) {}
  void write(ByteView data) override {
    std::copy(data.begin(), data.end(), buf_.begin() + static_cast<std::ptrdiff_t>(pos_));
    pos_ += data.size();
  }

 private:
  std::span<std::uint8_t> buf_;
  std::size_t pos_ = 0;
};

}  // namespace

double BenchReport::predicted_mib_per_s() const {
  if (perm_ns_per_call <= 0 || aead_perm_calls == 0) return 0;
  const double bytes = static_cast<double>(buffer_mib) * 1024.0 * 1024.0;
  const double seconds = static_cast<double>(aead_perm_calls) * perm_ns_per_call * 1e-9;
  return bytes / (1024.0 * 1024.0) / seconds;
}

std::string BenchReport::to_json() const {
  nlohmann::json j;
  j["permutation"] = {{"ns_per_call", perm_ns_per_call},
                      {"iterations", perm_iters},
                      {"reference_ns_per_call", kReferencePermNs}};
  j["aead_encrypt"] = {{"mib_per_s", aead_mib_per_s},
                       {"buffer_mib", buffer_mib},
                       {"permutation_calls", aead_perm_calls},
                       {"predicted_mib_per_s", predicted_mib_per_s()},
                       {"reference_mib_per_s", kReferenceAeadMibPerS}};
  j["repetitions"] = repetitions;
  j["statistic"] = "median";
  return j.dump(2);
}

BenchReport run_benchmark(const BenchOptions& o) {
  if (o.perm_iters == 0 || o.buffer_mib == 0 || o.repetitions < 1) {
    throw std::invalid_argument("benchmark parameters must be positive");
  }
  BenchReport report;
  report.perm_iters = o.perm_iters;
  report.buffer_mib = o.buffer_mib;
  report.repetitions = o.repetitions;

  State s;
  for (std::size_t i = 0; i < kStateWords; ++i) s[i] = kGolden * (i + 1);
  for (int i = 0; i < 1000; ++i) permute(s);

  std::vector<double> perm_ns;
  for (int rep = 0; rep < o.repetitions; ++rep) {
    const auto t0 = Clock::now();
    for (std::uint64_t i = 0; i < o.perm_iters; ++i) permute(s);
    const auto t1 = Clock::now();
    perm_ns.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() /
                      static_cast<double>(o.perm_iters));
  }
  report.perm_ns_per_call = median(perm_ns);

  const std::size_t bytes = o.buffer_mib * 1024 * 1024;
  Bytes input(bytes);
  for (std::size_t i = 0; i < bytes; ++i) input[i] = static_cast<std::uint8_t>(i * 167 + (s[0] & 0xFF));
  Bytes output(bytes);
  Key key;
  for (std::size_t i = 0; i < kKeyBytes; ++i) key[i] = static_cast<std::uint8_t>(i);
  Nonce nonce{};
  for (std::size_t i = 0; i < kNonceBytes; ++i) nonce[i] = static_cast<std::uint8_t>(0xA5 ^ i);

  std::vector<double> mib_per_s;
  for (int rep = 0; rep < o.repetitions; ++rep) {
    BufferSink sink(output);
    const PermutationCounter counter;
    const auto t0 = Clock::now();
    aead::Encryptor enc(key, nonce, {});
    enc.update(input, sink);
    const Tag tag = enc.finish(sink);
    const auto t1 = Clock::now();
    report.aead_perm_calls = counter.count();
    (void)tag;
    mib_per_s.push_back(static_cast<double>(o.buffer_mib) /
                        std::chrono::duration<double>(t1 - t0).count());
  }
  report.aead_mib_per_s = median(mib_per_s);
  return report;
}

// --- regression artifacts -------------------------------------------------

Bytes test_plaintext(std::uint64_t len) {
  if (len == 0) return {};
  std::array<std::uint8_t, 8> seed{};
  store64_le(seed.data(), len);
  return froghash_extended(seed, static_cast<std::size_t>(len));
}

Key test_key() {
  Key k;
  for (std::size_t i = 0; i < kKeyBytes; ++i) k[i] = static_cast<std::uint8_t>(i);
  return k;
}

Nonce test_nonce() {
  Nonce n{};
  for (std::size_t i = 0; i < kNonceBytes; ++i) n[i] = static_cast<std::uint8_t>(i);
  return n;
}

Bytes test_ad() { return {'H', 'E', 'A', 'D', 'E', 'R'}; }

TestAllReport run_test_all(const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  TestAllReport report;
  const container::KeySource key = test_key();
  container::Options options;
  options.nonce = test_nonce();
  const Bytes ad = test_ad();

  std::ostringstream manifest;
  for (const std::uint64_t len : kTestLengths) {
    const std::string suffix = std::to_string(len);
    const fs::path in = out_dir / ("in_" + suffix + ".bin");
    const fs::path enc = out_dir / ("enc_" + suffix + ".syf");
    const fs::path dec = out_dir / ("dec_" + suffix + ".bin");
    bool ok = false;
    try {
      const Bytes plain = test_plaintext(len);
      write_file_atomic(in, plain);
      container::encrypt_file(in, enc, key, ad, options);
      const bool size_ok = fs::file_size(enc) == len + container::kOverheadBytes;
      const auto verdict = container::decrypt_file(enc, dec, key, ad);
      ok = size_ok && verdict == container::Verdict::Ok && read_file(dec) == plain;
      for (const auto& p : {in, enc, dec}) {
        if (fs::exists(p)) manifest << to_hex(sha256_file(p)) << "  " << p.filename().string() << '\n';
      }
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) {
      report.ok = false;
      report.failed_lengths.push_back(len);
    }
  }
  report.manifest = out_dir / "MANIFEST.sha256";
  const std::string text = manifest.str();
  write_file_atomic(report.manifest, ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  return report;
}

}  // namespace symfrog::diagnostics
