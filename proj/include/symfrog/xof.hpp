#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "symfrog/common.hpp"

namespace symfrog {

/// SHAKE256 with `out_len` bytes of output.
Bytes shake256(ByteView input, std::size_t out_len);

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(ByteView input);

/// Streams the file through SHA-256. Throws IoError if it cannot be read.
Sha256Digest sha256_file(const std::filesystem::path& path);

}  // namespace symfrog
