#pragma once

// SymFrog-512 streaming AEAD.
//
//   Init(K, N); Absorb(0xA0, AD); duplex the message in 64-byte blocks with
//   0xC0, ciphertext absorbed into the rate, final tail padded; then
//   S[15] ^= 0xF0, P, T = Out(S)[0..31].
//
// Ciphertext length equals plaintext length; the tag is returned separately.
// There is no nonce-misuse resistance: reusing (K, N) leaks P1 ^ P2 for the
// first block.

#include <cstdint>
#include <optional>

#include "symfrog/common.hpp"
#include "symfrog/duplex.hpp"
#include "symfrog/io.hpp"

namespace symfrog::aead {

struct Params {
  Key key;
  Nonce nonce{};
  Bytes ad;
};

enum class Verdict { Ok, AuthFail };

/// Incremental encryption. update() may be called with arbitrary chunk sizes;
/// output for a partial trailing block is produced by finish().
class Encryptor {
 public:
  Encryptor(const Key& key, const Nonce& nonce, ByteView ad);

  /// Appends ciphertext for every completed 64-byte block to `out`.
  void update(ByteView plaintext, ByteSink& out);
  /// Emits the final partial block and returns the tag.
  Tag finish(ByteSink& out);

 private:
  Duplex duplex_;
  std::array<std::uint8_t, kRateBytes> pending_{};
  std::size_t pending_len_ = 0;
};

/// Incremental decryption. Released plaintext is unauthenticated until
/// finish() returns a matching tag; callers must buffer it.
class Decryptor {
 public:
  Decryptor(const Key& key, const Nonce& nonce, ByteView ad);

  void update(ByteView ciphertext, ByteSink& out);
  /// Returns the tag recomputed over the ciphertext.
  Tag finish(ByteSink& out);

 private:
  Duplex duplex_;
  std::array<std::uint8_t, kRateBytes> pending_{};
  std::size_t pending_len_ = 0;
};

/// Internal I/O chunk for the stream helpers.
inline constexpr std::size_t kStreamChunk = 64 * 1024;

Tag encrypt_stream(const Params& params, ByteSource& plaintext, ByteSink& ciphertext);

/// Recomputes the tag over `ciphertext` (read to end) and compares it in
/// constant time. On AuthFail everything written to `plaintext` must be
/// discarded.
Verdict decrypt_stream(const Params& params, ByteSource& ciphertext, const Tag& expected_tag,
                       ByteSink& plaintext);

struct Sealed {
  Bytes ciphertext;
  Tag tag{};
};

Sealed encrypt(const Params& params, ByteView plaintext);

/// Plaintext on success, nothing on authentication failure.
std::optional<Bytes> decrypt(const Params& params, ByteView ciphertext, const Tag& tag);

/// Stream-cipher structure check for `len` random bytes under `params`:
/// encrypt(P) ^ encrypt(0) must equal P on block 0 and (for random keys) must
/// not equal P on block 1, because ciphertext rather than plaintext is
/// absorbed. Vacuously true for len == 0.
bool keystream_xor_identity_check(const Params& params, std::size_t len);

}  // namespace symfrog::aead
