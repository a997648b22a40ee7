#include "symfrog/duplex.hpp"

#include <algorithm>
#include <string>

namespace symfrog {

OutputBlock output_block(const State& s) noexcept {
  OutputBlock out;
  for (std::size_t i = 0; i < kRateWords; ++i) {
    const std::uint64_t x = s[i] ^ rotl64(s[8 + i], 17) ^ rotl64(s[8 + (i + 3) % 8], 41) ^
                            (kGolden * static_cast<std::uint64_t>(i + 1));
    store64_le(out.data() + 8 * i, splitmix64_finalize(x));
  }
  return out;
}

OutputBlock pad_rate_tail(ByteView tail) {
  if (tail.size() >= kRateBytes) throw std::invalid_argument("padded tail must be shorter than 64 bytes");
  OutputBlock mask{};
  std::copy(tail.begin(), tail.end(), mask.begin());
  mask[tail.size()] ^= 0x80;
  mask[kRateBytes - 1] ^= 0x01;
  return mask;
}

void xor_into_rate(State& s, std::span<const std::uint8_t, kRateBytes> block) noexcept {
  for (std::size_t i = 0; i < kRateWords; ++i) s[i] ^= load64_le(block.data() + 8 * i);
}

Duplex::Duplex(ByteView key, ByteView nonce) {
  if (key.size() != kKeyBytes) {
    throw LengthError("key must be 128 bytes, got " + std::to_string(key.size()));
  }
  if (nonce.size() != kNonceBytes) {
    throw LengthError("nonce must be 32 bytes, got " + std::to_string(nonce.size()));
  }
  for (std::size_t i = 0; i < kStateWords; ++i) state_[i] = load64_le(key.data() + 8 * i);
  for (std::size_t i = 0; i < 4; ++i) state_[12 + i] ^= load64_le(nonce.data() + 8 * i);
  for (std::size_t i = 0; i < 4; ++i) state_[8 + i] ^= kAeadIdentifierWords[i];
  permute(state_);
}

Duplex::~Duplex() { secure_zero(state_.words.data(), sizeof(state_.words)); }

void Duplex::absorb(DomainByte ds, ByteView data) {
  if (ds != DomainByte::AssociatedData && ds != DomainByte::Header) {
    throw PhaseError("absorb() takes only the AD or header domain byte");
  }
  if (phase_ != Phase::Initialized && phase_ != Phase::AbsorbingAD) {
    throw PhaseError("absorb() after streaming has started");
  }
  phase_ = Phase::AbsorbingAD;

  std::size_t off = 0;
  for (; data.size() - off >= kRateBytes; off += kRateBytes) {
    xor_into_rate(state_, data.subspan(off).first<kRateBytes>());
    xor_domain(state_, ds);
    permute(state_);
  }
  const OutputBlock padded = pad_rate_tail(data.subspan(off));
  xor_into_rate(state_, padded);
  xor_domain(state_, ds);
  permute(state_);
}

void Duplex::require_streamable() const {
  if (phase_ == Phase::Initialized) throw PhaseError("associated data must be absorbed before streaming");
  if (phase_ == Phase::Finalized || stream_closed_) throw PhaseError("ciphertext stream already closed");
}

void Duplex::encrypt_block(std::span<const std::uint8_t, kRateBytes> in,
                           std::span<std::uint8_t, kRateBytes> out) {
  require_streamable();
  phase_ = Phase::Streaming;
  OutputBlock z = output_block(state_);
  for (std::size_t i = 0; i < kRateBytes; ++i) out[i] = in[i] ^ z[i];
  xor_into_rate(state_, std::span<const std::uint8_t, kRateBytes>(out));
  xor_domain(state_, DomainByte::Ciphertext);
  permute(state_);
  secure_zero(z.data(), z.size());
}

void Duplex::decrypt_block(std::span<const std::uint8_t, kRateBytes> in,
                           std::span<std::uint8_t, kRateBytes> out) {
  require_streamable();
  phase_ = Phase::Streaming;
  OutputBlock z = output_block(state_);
  // Absorb before writing `out` so in-place decryption works.
  xor_into_rate(state_, in);
  for (std::size_t i = 0; i < kRateBytes; ++i) out[i] = in[i] ^ z[i];
  xor_domain(state_, DomainByte::Ciphertext);
  permute(state_);
  secure_zero(z.data(), z.size());
}

void Duplex::absorb_ciphertext_tail(ByteView ct) {
  const OutputBlock padded = pad_rate_tail(ct);
  xor_into_rate(state_, padded);
  xor_domain(state_, DomainByte::Ciphertext);
  permute(state_);
  phase_ = Phase::Streaming;
  stream_closed_ = true;
}

void Duplex::encrypt_tail(ByteView in, std::span<std::uint8_t> out) {
  require_streamable();
  if (in.size() >= kRateBytes || out.size() < in.size()) {
    throw std::invalid_argument("tail must be under 64 bytes with room for its output");
  }
  OutputBlock z = output_block(state_);
  std::array<std::uint8_t, kRateBytes> ct{};
  for (std::size_t i = 0; i < in.size(); ++i) ct[i] = in[i] ^ z[i];
  std::copy_n(ct.begin(), in.size(), out.begin());
  absorb_ciphertext_tail(ByteView(ct.data(), in.size()));
  secure_zero(z.data(), z.size());
}

void Duplex::decrypt_tail(ByteView in, std::span<std::uint8_t> out) {
  require_streamable();
  if (in.size() >= kRateBytes || out.size() < in.size()) {
    throw std::invalid_argument("tail must be under 64 bytes with room for its output");
  }
  OutputBlock z = output_block(state_);
  std::array<std::uint8_t, kRateBytes> ct{};
  std::copy(in.begin(), in.end(), ct.begin());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = ct[i] ^ z[i];
  absorb_ciphertext_tail(ByteView(ct.data(), in.size()));
  secure_zero(z.data(), z.size());
}

Tag Duplex::finalize(DomainByte ds) {
  switch (ds) {
    case DomainByte::Tag:
      if (phase_ != Phase::Streaming || !stream_closed_) {
        throw PhaseError("final tag requires a closed ciphertext stream");
      }
      break;
    case DomainByte::HeaderTag:
      if (phase_ != Phase::AbsorbingAD) throw PhaseError("header tag requires an absorb and no streaming");
      break;
    default:
      throw PhaseError("finalize() takes only the tag or header-tag domain byte");
  }
  xor_domain(state_, ds);
  permute(state_);
  OutputBlock z = output_block(state_);
  Tag tag;
  std::copy_n(z.begin(), kTagBytes, tag.begin());
  secure_zero(z.data(), z.size());
  phase_ = Phase::Finalized;
  return tag;
}

}  // namespace symfrog
