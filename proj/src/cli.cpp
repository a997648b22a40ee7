#include "symfrog/cli.hpp"

#include <termios.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "symfrog/container.hpp"
#include "symfrog/froghash.hpp"
#include "symfrog/io.hpp"

namespace symfrog::cli {

namespace {

Bytes parse_hex_arg(const std::string& flag, const std::string& value, std::optional<std::size_t> expected) {
  Bytes bytes;
  try {
    bytes = from_hex(value);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
  if (expected && bytes.size() != *expected) {
    throw UsageError(flag + " must be " + std::to_string(*expected * 2) + " hex characters (" +
                     std::to_string(*expected) + " bytes), got " + std::to_string(value.size()));
  }
  return bytes;
}

std::string read_passphrase_from_terminal(std::ostream& err) {
  err << "Passphrase: " << std::flush;
  termios old {};
  const bool tty = ::isatty(STDIN_FILENO) && ::tcgetattr(STDIN_FILENO, &old) == 0;
  if (tty) {
    termios quiet = old;
    quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
    ::tcsetattr(STDIN_FILENO, TCSANOW, &quiet);
  }
  std::string line;
  std::getline(std::cin, line);
  if (tty) ::tcsetattr(STDIN_FILENO, TCSANOW, &old);
  err << '\n';
  return line;
}

bool progress_enabled(bool quiet) {
  if (quiet) return false;
  if (const char* env = std::getenv("SYMFROG_NO_PROGRESS"); env && std::string_view(env) == "1") return false;
  return ::isatty(STDERR_FILENO) != 0;
}

container::Options file_options(const Invocation& inv, std::ostream& err) {
  container::Options opts;
  opts.nonce = inv.nonce;
  if (progress_enabled(inv.quiet)) {
    opts.progress = [&err, last = -1](std::uint64_t done, std::uint64_t total) mutable {
      const int pct = total == 0 ? 100 : static_cast<int>(done * 100 / total);
      if (pct == last) return;
      last = pct;
      err << "\r  " << pct << "%" << (pct == 100 ? "\n" : "") << std::flush;
    };
  }
  return opts;
}

container::KeySource key_source(const Invocation& inv, std::ostream& err) {
  if (inv.key) return *inv.key;
  std::string text = *inv.passphrase;
  if (text == "-") text = read_passphrase_from_terminal(err);
  if (text.empty()) err << "symfrog512: warning: empty passphrase\n";
  return container::Passphrase(std::move(text), inv.paranoid ? kdf::kSensitive : kdf::kModerate);
}

int run_encrypt(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto key = key_source(inv, err);
  container::encrypt_file(inv.in_path, inv.out_path, key, inv.ad, file_options(inv, err));
  if (!inv.quiet) out << "OK: encrypted " << inv.in_path << " -> " << inv.out_path << '\n';
  return exit_code::kOk;
}

int run_decrypt(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto key = key_source(inv, err);
  const auto verdict = container::decrypt_file(inv.in_path, inv.out_path, key, inv.ad, file_options(inv, err));
  switch (verdict) {
    case container::Verdict::Ok:
      if (!inv.quiet) out << "OK: decrypted " << inv.in_path << " -> " << inv.out_path << '\n';
      return exit_code::kOk;
    case container::Verdict::HeaderAuthFail:
      err << "symfrog512: header authentication failed (wrong key/passphrase or --ad, or modified "
             "header); no output written\n";
      return exit_code::kAuthFailure;
    case container::Verdict::BodyAuthFail:
      err << "symfrog512: ciphertext authentication failed (modified or corrupted data); no output "
             "written\n";
      return exit_code::kAuthFailure;
    case container::Verdict::FormatError:
      err << "symfrog512: not a valid SymFrog container (bad magic/version/flags or truncated); no "
             "output written\n";
      return exit_code::kAuthFailure;
  }
  return exit_code::kAuthFailure;
}

int run_hash(const Invocation& inv, std::ostream& out) {
  const Digest512 digest = froghash_file(inv.in_path);
  const std::string line = to_hex(digest) + "  " + inv.in_path + "\n";
  if (inv.out_path.empty()) {
    out << line;
  } else {
    write_file_atomic(inv.out_path, ByteView(reinterpret_cast<const std::uint8_t*>(line.data()), line.size()));
    if (!inv.quiet) out << line;
  }
  return exit_code::kOk;
}

int run_test_all(const Invocation& inv, std::ostream& out, std::ostream& err) {
  if (!inv.quiet) out << "symfrog512 --test-all: writing artifacts to " << inv.test_dir << '\n';
  const auto report = diagnostics::run_test_all(inv.test_dir);
  if (!report.ok) {
    err << "symfrog512 --test-all: FAILED for lengths:";
    for (const auto len : report.failed_lengths) err << ' ' << len;
    err << '\n';
    return exit_code::kAuthFailure;
  }
  if (!inv.quiet) {
    out << "symfrog512 --test-all: all " << diagnostics::kTestLengths.size()
        << " lengths OK; manifest " << report.manifest.string() << '\n';
  }
  return exit_code::kOk;
}

int run_benchmark(const Invocation& inv, std::ostream& out) {
  const auto r = diagnostics::run_benchmark();
  if (!inv.quiet) {
    out << "P1024-v2: " << r.perm_ns_per_call << " ns/perm (" << r.perm_iters << " iterations, median of "
        << r.repetitions << "; reference " << diagnostics::kReferencePermNs << ")\n";
    out << "AEAD core encrypt (no I/O, no KDF): " << r.aead_mib_per_s << " MiB/s on " << r.buffer_mib
        << " MiB (reference " << diagnostics::kReferenceAeadMibPerS << ")\n";
  }
  if (!inv.json_path.empty()) {
    const std::string json = r.to_json() + "\n";
    write_file_atomic(inv.json_path, ByteView(reinterpret_cast<const std::uint8_t*>(json.data()), json.size()));
  } else if (inv.quiet) {
    out << r.to_json() << '\n';
  }
  return exit_code::kOk;
}

int run_avalanche(const Invocation& inv, std::ostream& out) {
  const auto report = diagnostics::run_avalanche(inv.avalanche);
  const std::string csv = report.to_csv();
  if (inv.csv_path.empty()) {
    out << csv;
  } else {
    write_file_atomic(inv.csv_path, ByteView(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
  }
  return exit_code::kOk;
}

}  // namespace

std::string help_text() {
  return R"(SymFrog-512: AEAD file encryption and FrogHash-512

Usage:
  symfrog512 --help
  symfrog512 --test-all [--dir <dir>]
  symfrog512 --benchmark [--json <file>]
  symfrog512 --avalanche [--trials <n>] [--rounds <r>] [--seed <s>] [--csv <file>]

Encrypt (AEAD):
  symfrog512 enc <in> <out> [--pass <pw> | --key-hex <hex1024>] [--ad <hex>] [--nonce-hex <hex256>] [--paranoid] [--quiet|-q]

Decrypt (AEAD):
  symfrog512 dec <in> <out> [--pass <pw> | --key-hex <hex1024>] [--ad <hex>] [--paranoid] [--quiet|-q]

Hash (FrogHash-512):
  symfrog512 hash <in> [--out <file>] [--quiet|-q]

Notes:
  --paranoid uses Argon2id SENSITIVE limits (4 passes, 1 GiB). Default is MODERATE (3 passes, 256 MiB).
  --quiet (or -q) suppresses non-error output.
  --ad is Additional Authenticated Data in hex (binds header + ciphertext).
  --nonce-hex is optional; if omitted, a random 256-bit nonce is generated.
  --pass - reads the passphrase from the terminal.
  SYMFROG_NO_PROGRESS=1 disables progress output.

Exit codes:
  0 success, 1 authentication failure or invalid container, 2 usage error,
  3 I/O error, 4 key derivation or RNG failure.

Examples:
  symfrog512 enc secret.txt secret.syf --pass 'mypw' --ad 486561646572
  symfrog512 dec secret.syf secret.txt --pass 'mypw' --ad 486561646572
  symfrog512 hash secret.txt
)";
}

Invocation parse_args(const std::vector<std::string>& args) {
  CLI::App app{"symfrog512"};
  app.set_help_flag();
  app.allow_windows_style_options(false);
  app.require_subcommand(0, 1);

  Invocation inv;
  bool help = false, test_all = false, benchmark = false, avalanche = false;
  app.add_flag("-h,--help", help);
  auto* test_all_opt = app.add_flag("--test-all", test_all);
  auto* bench_opt = app.add_flag("--benchmark", benchmark);
  auto* aval_opt = app.add_flag("--avalanche", avalanche);
  app.add_option("--dir", inv.test_dir)->needs(test_all_opt);
  app.add_option("--json", inv.json_path)->needs(bench_opt);
  app.add_option("--trials", inv.avalanche.trials)->needs(aval_opt)->check(CLI::PositiveNumber);
  app.add_option("--rounds", inv.avalanche.max_rounds)->needs(aval_opt)->check(CLI::Range(0, kRounds));
  app.add_option("--seed", inv.avalanche.seed)->needs(aval_opt);
  app.add_option("--csv", inv.csv_path)->needs(aval_opt);
  app.add_flag("-q,--quiet", inv.quiet);
  test_all_opt->excludes(bench_opt)->excludes(aval_opt);
  bench_opt->excludes(aval_opt);

  std::string key_hex, ad_hex, nonce_hex, passphrase;
  auto add_crypt = [&](const char* name, const char* desc, bool with_nonce) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("in", inv.in_path)->required();
    sub->add_option("out", inv.out_path)->required();
    auto* pass = sub->add_option("--pass", passphrase)->allow_extra_args(false);
    auto* key = sub->add_option("--key-hex", key_hex);
    pass->excludes(key);
    sub->add_option("--ad", ad_hex);
    if (with_nonce) sub->add_option("--nonce-hex", nonce_hex);
    sub->add_flag("--paranoid", inv.paranoid);
    sub->add_flag("-q,--quiet", inv.quiet);
    return sub;
  };
  auto* enc = add_crypt("enc", "Encrypt a file", true);
  auto* dec = add_crypt("dec", "Decrypt a file", false);
  auto* hash = app.add_subcommand("hash", "FrogHash-512 of a file");
  hash->add_option("in", inv.in_path)->required();
  hash->add_option("--out", inv.out_path);
  hash->add_flag("-q,--quiet", inv.quiet);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const bool any_mode = test_all || benchmark || avalanche;
  if (help) {
    inv.command = Command::Help;
    return inv;
  }
  if (app.get_subcommands().empty()) {
    if (test_all) inv.command = Command::TestAll;
    else if (benchmark) inv.command = Command::Benchmark;
    else if (avalanche) inv.command = Command::Avalanche;
    else throw UsageError("no command given; see --help");
    return inv;
  }
  if (any_mode) throw UsageError("--test-all/--benchmark/--avalanche cannot be combined with a subcommand");

  if (hash->parsed()) {
    inv.command = Command::Hash;
    return inv;
  }

  inv.command = enc->parsed() ? Command::Encrypt : Command::Decrypt;
  auto* sub = enc->parsed() ? enc : dec;
  const bool has_pass = sub->count("--pass") > 0;
  const bool has_key = sub->count("--key-hex") > 0;
  if (!has_pass && !has_key) throw UsageError("one of --pass or --key-hex is required");
  if (has_pass) inv.passphrase = passphrase;
  if (has_key) inv.key = Key(parse_hex_arg("--key-hex", key_hex, kKeyBytes));
  if (!ad_hex.empty()) inv.ad = parse_hex_arg("--ad", ad_hex, std::nullopt);
  if (enc->parsed() && enc->count("--nonce-hex") > 0) {
    const Bytes n = parse_hex_arg("--nonce-hex", nonce_hex, kNonceBytes);
    Nonce nonce{};
    std::copy(n.begin(), n.end(), nonce.begin());
    inv.nonce = nonce;
  }
  return inv;
}

int run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    switch (inv.command) {
      case Command::Help: out << help_text(); return exit_code::kOk;
      case Command::Encrypt: return run_encrypt(inv, out, err);
      case Command::Decrypt: return run_decrypt(inv, out, err);
      case Command::Hash: return run_hash(inv, out);
      case Command::TestAll: return run_test_all(inv, out, err);
      case Command::Benchmark: return run_benchmark(inv, out);
      case Command::Avalanche: return run_avalanche(inv, out);
    }
  } catch (const IoError& e) {
    err << "symfrog512: I/O error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "symfrog512: I/O error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const KdfError& e) {
    err << "symfrog512: key derivation failed: " << e.what() << '\n';
    return exit_code::kKdf;
  } catch (const RngError& e) {
    err << "symfrog512: random number generator failed: " << e.what() << '\n';
    return exit_code::kKdf;
  } catch (const std::invalid_argument& e) {
    err << "symfrog512: " << e.what() << '\n';
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Invocation inv;
  try {
    inv = parse_args(args);
  } catch (const UsageError& e) {
    std::cerr << "symfrog512: " << e.what() << "\n\n" << help_text();
    return exit_code::kUsage;
  }
  return run(inv, std::cout, std::cerr);
}

}  // namespace symfrog::cli
