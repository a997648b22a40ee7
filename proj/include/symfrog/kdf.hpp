#pragma once

#include <cstdint>
#include <string_view>

#include "symfrog/common.hpp"

namespace symfrog::kdf {

struct Profile {
  std::string_view name;
  std::uint64_t ops_limit;
  std::size_t mem_limit;
};

/// Argon2id v1.3, 3 passes, 256 MiB.
inline constexpr Profile kModerate{"MODERATE", 3, std::size_t{256} << 20};
/// Argon2id v1.3, 4 passes, 1 GiB.
inline constexpr Profile kSensitive{"SENSITIVE", 4, std::size_t{1} << 30};

/// 1024-bit key from a passphrase with Argon2id v1.3. Throws KdfError if the
/// profile's memory cannot be allocated; the profile is never lowered.
Key derive_key(std::string_view passphrase, const Salt& salt, const Profile& profile);

/// 32 bytes from the OS CSPRNG. Throws RngError if it is unavailable.
Salt generate_salt();

/// Fills `out` from the OS CSPRNG. Throws RngError if it is unavailable.
void random_bytes(std::span<std::uint8_t> out);

}  // namespace symfrog::kdf
