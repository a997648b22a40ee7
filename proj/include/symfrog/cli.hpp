#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symfrog/common.hpp"
#include "symfrog/diagnostics.hpp"

namespace symfrog::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kAuthFailure = 1;  // header/body authentication, bad format
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;
inline constexpr int kKdf = 4;  // also RNG failures
}  // namespace exit_code

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { Encrypt, Decrypt, Hash, TestAll, Benchmark, Avalanche, Help };

struct Invocation {
  Command command = Command::Help;
  std::string in_path;
  std::string out_path;  // enc/dec output, or hash --out

  // Key source for enc/dec; exactly one is set. A passphrase of "-" is read
  // from the terminal.
  std::optional<std::string> passphrase;
  std::optional<Key> key;

  Bytes ad;
  std::optional<Nonce> nonce;
  bool paranoid = false;
  bool quiet = false;

  std::string test_dir = "symfrog_test_out";
  std::string json_path;  // --benchmark --json
  std::string csv_path;   // --avalanche --csv
  diagnostics::AvalancheOptions avalanche;
};

/// `args` excludes the program name. Throws UsageError.
Invocation parse_args(const std::vector<std::string>& args);

std::string help_text();

/// Executes a parsed invocation; returns the process exit code. Errors go to
/// `err`, results and progress notes to `out` (suppressed by --quiet).
int run(const Invocation& inv, std::ostream& out, std::ostream& err);

/// parse_args + run, with usage errors mapped to exit code 2.
int main_entry(int argc, char** argv);

}  // namespace symfrog::cli
