#include "symfrog/kdf.hpp"

#include <sodium.h>

#include <cstdint>
#include <string>

#include "argon2_abi.hpp"

namespace symfrog::kdf {

namespace {

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw RngError("libsodium initialization failed");
}

}  // namespace

Key derive_key(std::string_view passphrase, const Salt& salt, const Profile& profile) {
  const std::uint64_t m_kib = profile.mem_limit / 1024;
  if (m_kib > UINT32_MAX || profile.ops_limit > UINT32_MAX) {
    throw KdfError("Argon2id (" + std::string(profile.name) + ") parameters out of range");
  }
  Key key;
  // libargon2 takes the memory cost in KiB; one lane.
  const int rc = argon2id_hash_raw(static_cast<std::uint32_t>(profile.ops_limit),
                                   static_cast<std::uint32_t>(m_kib), 1,
                                   passphrase.data(), passphrase.size(), salt.data(), salt.size(),
                                   key.data(), key.size());
  if (rc != kArgon2Ok) {
    throw KdfError("Argon2id (" + std::string(profile.name) + ") failed: " + argon2_error_message(rc));
  }
  return key;
}

void random_bytes(std::span<std::uint8_t> out) {
  ensure_sodium();
  randombytes_buf(out.data(), out.size());
}

Salt generate_salt() {
  Salt salt{};
  random_bytes(salt);
  return salt;
}

}  // namespace symfrog::kdf
