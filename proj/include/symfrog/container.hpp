#pragma once

// The .syf encrypted-file container.
//
//   offset  size  field
//        0     8  magic "SYMFROG1"
//        8     4  version (LE, = 1)
//       12     4  flags (LE, bit 0: key derived with Argon2id)
//       16    32  salt
//       48    32  nonce
//       80     8  ct_len (LE)
//       88    32  reserved (zero on write, authenticated on read)
//      120    32  header_tag
//      152     -  ciphertext (ct_len bytes), then the 32-byte final tag
//
// header_tag = Tag32(Init(K,N); Absorb(0xB0, "SYMFROG-HDRTAG-v1" || H0 || AD);
//                    Finalize(0xB1)), with H0 the header with a zeroed tag.
// The body uses the same (K, N, AD) AEAD transcript.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "symfrog/common.hpp"
#include "symfrog/io.hpp"
#include "symfrog/kdf.hpp"

namespace symfrog::container {

inline constexpr std::size_t kHeaderBytes = 152;
inline constexpr std::size_t kOverheadBytes = kHeaderBytes + kTagBytes;  // 184
inline constexpr std::array<std::uint8_t, 8> kMagic = {'S', 'Y', 'M', 'F', 'R', 'O', 'G', '1'};
inline constexpr std::uint32_t kVersion = 1;
inline constexpr std::uint32_t kFlagKeyDerived = 1u << 0;

namespace offset {
inline constexpr std::size_t kMagic = 0;
inline constexpr std::size_t kVersion = 8;
inline constexpr std::size_t kFlags = 12;
inline constexpr std::size_t kSalt = 16;
inline constexpr std::size_t kNonce = 48;
inline constexpr std::size_t kCtLen = 80;
inline constexpr std::size_t kReserved = 88;
inline constexpr std::size_t kHeaderTag = 120;
}  // namespace offset

struct Header {
  std::array<std::uint8_t, 8> magic = kMagic;
  std::uint32_t version = kVersion;
  std::uint32_t flags = 0;
  Salt salt{};
  Nonce nonce{};
  std::uint64_t ct_len = 0;
  std::array<std::uint8_t, 32> reserved{};
  Tag header_tag{};

  friend bool operator==(const Header&, const Header&) = default;
};

using HeaderBytes = std::array<std::uint8_t, kHeaderBytes>;

HeaderBytes serialize_header(const Header& h);
/// Pure field decoding; validation happens in decrypt().
Header parse_header(std::span<const std::uint8_t, kHeaderBytes> bytes);

/// Throws std::invalid_argument if the header_tag bytes (120..151) are not
/// zero.
Tag compute_header_tag(const Key& key, const Nonce& nonce, ByteView ad,
                       std::span<const std::uint8_t, kHeaderBytes> header_zeroed);

/// Passphrase plus the Argon2id profile to use. The text is wiped on
/// destruction.
struct Passphrase {
  std::string text;
  kdf::Profile profile = kdf::kModerate;

  Passphrase(std::string t, kdf::Profile p) : text(std::move(t)), profile(p) {}
  Passphrase(const Passphrase&) = default;
  Passphrase& operator=(const Passphrase&) = default;
  ~Passphrase() { secure_zero(text.data(), text.size()); }
};

using KeySource = std::variant<Key, Passphrase>;

enum class Verdict { Ok, HeaderAuthFail, BodyAuthFail, FormatError };

const char* to_string(Verdict v) noexcept;

struct Options {
  /// Encryption only; a random nonce is drawn when unset.
  std::optional<Nonce> nonce;
  /// Called with (bytes processed, total) as the body is streamed.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
  /// Runs once the temporary output is complete, right before the atomic
  /// rename. Exceptions thrown here abort the operation.
  std::function<void()> before_commit;
};

/// Writes header || ciphertext || tag for exactly `length` plaintext bytes.
/// Throws IoError if the source ends early or runs long.
void encrypt(ByteSource& plaintext, std::uint64_t length, ByteSink& out, const KeySource& key,
             ByteView ad, const Options& options = {});

/// Decrypts a container of `total_size` bytes. The header is read and
/// authenticated before any body byte is consumed. Plaintext is released to
/// `out` as it is produced, so callers must discard it unless the verdict is
/// Ok.
Verdict decrypt(ByteSource& input, std::uint64_t total_size, ByteSink& out, const KeySource& key,
                ByteView ad, const Options& options = {});

/// Temp file + fsync + atomic rename; on any error the destination is left
/// untouched and the temporary removed.
void encrypt_file(const std::filesystem::path& in_path, const std::filesystem::path& out_path,
                  const KeySource& key, ByteView ad, const Options& options = {});

/// The destination exists afterwards iff the verdict is Ok.
Verdict decrypt_file(const std::filesystem::path& in_path, const std::filesystem::path& out_path,
                     const KeySource& key, ByteView ad, const Options& options = {});

}  // namespace symfrog::container
