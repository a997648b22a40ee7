#pragma once

#include <array>
#include <filesystem>

#include "symfrog/common.hpp"
#include "symfrog/io.hpp"
#include "symfrog/permutation.hpp"

namespace symfrog {

using Digest512 = std::array<std::uint8_t, 64>;

/// FrogHash-512: zero state with "SYMFROG-HASH-v1" in capacity bytes 64..78,
/// one permutation, then a plain sponge (no domain byte) over 64-byte blocks
/// with 10*1 padding on the final step.
class FrogHash {
 public:
  FrogHash();

  void update(ByteView data);
  Digest512 finish();
  /// First 64 bytes as finish(); each further 64-byte block is preceded by
  /// one permutation.
  Bytes finish_extended(std::size_t out_len);

 private:
  void pad_and_permute();

  State state_;
  std::array<std::uint8_t, kRateBytes> pending_{};
  std::size_t pending_len_ = 0;
  bool finished_ = false;
};

Digest512 froghash(ByteView data);
Digest512 froghash(ByteSource& src);
Digest512 froghash_file(const std::filesystem::path& path);

/// Throws std::invalid_argument if out_len == 0.
Bytes froghash_extended(ByteView data, std::size_t out_len);
Bytes froghash_extended(ByteSource& src, std::size_t out_len);

}  // namespace symfrog
