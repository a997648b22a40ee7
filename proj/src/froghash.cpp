#include "symfrog/froghash.hpp"

#include <algorithm>

#include "symfrog/duplex.hpp"

namespace symfrog {

FrogHash::FrogHash() {
  static constexpr std::string_view kDomain = "SYMFROG-HASH-v1";
  std::array<std::uint8_t, 16> dom{};
  std::copy(kDomain.begin(), kDomain.end(), dom.begin());
  state_[8] ^= load64_le(dom.data());
  state_[9] ^= load64_le(dom.data() + 8);
  permute(state_);
}

void FrogHash::update(ByteView data) {
  if (finished_) throw PhaseError("FrogHash::update after finish");
  std::size_t off = 0;
  if (pending_len_ > 0) {
    const std::size_t take = std::min(kRateBytes - pending_len_, data.size());
    std::copy_n(data.begin(), take, pending_.begin() + static_cast<std::ptrdiff_t>(pending_len_));
    pending_len_ += take;
    off = take;
    if (pending_len_ < kRateBytes) return;
    xor_into_rate(state_, pending_);
    permute(state_);
    pending_len_ = 0;
  }
  for (; data.size() - off >= kRateBytes; off += kRateBytes) {
    xor_into_rate(state_, data.subspan(off).first<kRateBytes>());
    permute(state_);
  }
  pending_len_ = data.size() - off;
  std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(off), pending_len_, pending_.begin());
}

void FrogHash::pad_and_permute() {
  if (finished_) throw PhaseError("FrogHash already finished");
  finished_ = true;
  xor_into_rate(state_, pad_rate_tail(ByteView(pending_.data(), pending_len_)));
  permute(state_);
}

Digest512 FrogHash::finish() {
  pad_and_permute();
  return output_block(state_);
}

Bytes FrogHash::finish_extended(std::size_t out_len) {
  if (out_len == 0) throw std::invalid_argument("FrogHash output length must be at least 1");
  pad_and_permute();
  Bytes out;
  out.reserve(out_len + kRateBytes);
  for (;;) {
    const OutputBlock block = output_block(state_);
    out.insert(out.end(), block.begin(), block.end());
    if (out.size() >= out_len) break;
    permute(state_);
  }
  out.resize(out_len);
  return out;
}

Digest512 froghash(ByteView data) {
  FrogHash h;
  h.update(data);
  return h.finish();
}

namespace {

void feed(FrogHash& h, ByteSource& src) {
  Bytes buf(1 << 16);
  while (const std::size_t n = src.read(buf)) h.update(ByteView(buf.data(), n));
}

}  // namespace

Digest512 froghash(ByteSource& src) {
  FrogHash h;
  feed(h, src);
  return h.finish();
}

Digest512 froghash_file(const std::filesystem::path& path) {
  FileSource src(path);
  return froghash(src);
}

Bytes froghash_extended(ByteView data, std::size_t out_len) {
  FrogHash h;
  h.update(data);
  return h.finish_extended(out_len);
}

Bytes froghash_extended(ByteSource& src, std::size_t out_len) {
  FrogHash h;
  feed(h, src);
  return h.finish_extended(out_len);
}

}  // namespace symfrog
