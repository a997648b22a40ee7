#pragma once

// Declarations for the PHC reference Argon2 library (libargon2). Only the
// runtime package is present on some systems, so the one entry point used is
// declared here; signature as in argon2.h since 20161029.

#include <cstddef>
#include <cstdint>

extern "C" {

int argon2id_hash_raw(const std::uint32_t t_cost, const std::uint32_t m_cost,
                      const std::uint32_t parallelism, const void* pwd, const std::size_t pwdlen,
                      const void* salt, const std::size_t saltlen, void* hash,
                      const std::size_t hashlen);

const char* argon2_error_message(int error_code);

}  // extern "C"

inline constexpr int kArgon2Ok = 0;
