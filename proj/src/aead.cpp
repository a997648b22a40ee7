#include "symfrog/aead.hpp"

#include <algorithm>

#include "symfrog/kdf.hpp"

namespace symfrog::aead {

namespace {

// Shared block-buffering for both directions. `Op` is the full-block
// operation on the duplex.
template <typename Op>
void buffered_update(Duplex& duplex, std::array<std::uint8_t, kRateBytes>& pending,
                     std::size_t& pending_len, ByteView input, ByteSink& out, Op op) {
  std::array<std::uint8_t, kRateBytes> block_out;
  std::size_t off = 0;

  if (pending_len > 0) {
    const std::size_t take = std::min(kRateBytes - pending_len, input.size());
    std::copy_n(input.begin(), take, pending.begin() + static_cast<std::ptrdiff_t>(pending_len));
    pending_len += take;
    off = take;
    if (pending_len < kRateBytes) return;
    (duplex.*op)(pending, block_out);
    out.write(block_out);
    pending_len = 0;
  }

  // Whole blocks straight from the input, written out in bounded batches.
  std::size_t whole = (input.size() - off) / kRateBytes * kRateBytes;
  if (whole > 0) {
    Bytes batch(std::min(whole, kStreamChunk));
    while (whole > 0) {
      const std::size_t n = std::min(whole, batch.size());
      for (std::size_t b = 0; b < n; b += kRateBytes) {
        (duplex.*op)(input.subspan(off + b).first<kRateBytes>(),
                     std::span<std::uint8_t, kRateBytes>(batch.data() + b, kRateBytes));
      }
      out.write(ByteView(batch.data(), n));
      off += n;
      whole -= n;
    }
    secure_zero(batch.data(), batch.size());
  }

  pending_len = input.size() - off;
  std::copy_n(input.begin() + static_cast<std::ptrdiff_t>(off), pending_len, pending.begin());
  secure_zero(block_out.data(), block_out.size());
}

}  // namespace

Encryptor::Encryptor(const Key& key, const Nonce& nonce, ByteView ad) : duplex_(key, nonce) {
  duplex_.absorb(DomainByte::AssociatedData, ad);
}

void Encryptor::update(ByteView plaintext, ByteSink& out) {
  buffered_update(duplex_, pending_, pending_len_, plaintext, out, &Duplex::encrypt_block);
}

Tag Encryptor::finish(ByteSink& out) {
  std::array<std::uint8_t, kRateBytes> tail_out{};
  duplex_.encrypt_tail(ByteView(pending_.data(), pending_len_), tail_out);
  if (pending_len_ > 0) out.write(ByteView(tail_out.data(), pending_len_));
  secure_zero(pending_.data(), pending_.size());
  pending_len_ = 0;
  return duplex_.finalize(DomainByte::Tag);
}

Decryptor::Decryptor(const Key& key, const Nonce& nonce, ByteView ad) : duplex_(key, nonce) {
  duplex_.absorb(DomainByte::AssociatedData, ad);
}

void Decryptor::update(ByteView ciphertext, ByteSink& out) {
  buffered_update(duplex_, pending_, pending_len_, ciphertext, out, &Duplex::decrypt_block);
}

Tag Decryptor::finish(ByteSink& out) {
  std::array<std::uint8_t, kRateBytes> tail_out{};
  duplex_.decrypt_tail(ByteView(pending_.data(), pending_len_), tail_out);
  if (pending_len_ > 0) out.write(ByteView(tail_out.data(), pending_len_));
  secure_zero(tail_out.data(), tail_out.size());
  pending_len_ = 0;
  return duplex_.finalize(DomainByte::Tag);
}

Tag encrypt_stream(const Params& params, ByteSource& plaintext, ByteSink& ciphertext) {
  Encryptor enc(params.key, params.nonce, params.ad);
  Bytes buf(kStreamChunk);
  while (const std::size_t n = plaintext.read(buf)) enc.update(ByteView(buf.data(), n), ciphertext);
  secure_zero(buf.data(), buf.size());
  return enc.finish(ciphertext);
}

Verdict decrypt_stream(const Params& params, ByteSource& ciphertext, const Tag& expected_tag,
                       ByteSink& plaintext) {
  Decryptor dec(params.key, params.nonce, params.ad);
  Bytes buf(kStreamChunk);
  while (const std::size_t n = ciphertext.read(buf)) dec.update(ByteView(buf.data(), n), plaintext);
  const Tag tag = dec.finish(plaintext);
  return constant_time_eq(tag, expected_tag) ? Verdict::Ok : Verdict::AuthFail;
}

Sealed encrypt(const Params& params, ByteView plaintext) {
  MemorySource src(plaintext);
  MemorySink sink;
  sink.bytes.reserve(plaintext.size());
  Sealed sealed;
  sealed.tag = encrypt_stream(params, src, sink);
  sealed.ciphertext = std::move(sink.bytes);
  return sealed;
}

std::optional<Bytes> decrypt(const Params& params, ByteView ciphertext, const Tag& tag) {
  MemorySource src(ciphertext);
  MemorySink sink;
  sink.bytes.reserve(ciphertext.size());
  if (decrypt_stream(params, src, tag, sink) != Verdict::Ok) {
    secure_zero(sink.bytes.data(), sink.bytes.size());
    return std::nullopt;
  }
  return std::move(sink.bytes);
}

bool keystream_xor_identity_check(const Params& params, std::size_t len) {
  if (len == 0) return true;
  Bytes plaintext(len);
  kdf::random_bytes(plaintext);
  const Sealed real = encrypt(params, plaintext);
  const Sealed zero = encrypt(params, Bytes(len, 0));

  const std::size_t first = std::min(len, kRateBytes);
  for (std::size_t i = 0; i < first; ++i) {
    if ((real.ciphertext[i] ^ zero.ciphertext[i]) != plaintext[i]) return false;
  }
  if (len <= kRateBytes) return true;

  // Block 1 onwards: the states have diverged, so the XOR must not reproduce P.
  const std::size_t end = std::min(len, 2 * kRateBytes);
  for (std::size_t i = kRateBytes; i < end; ++i) {
    if ((real.ciphertext[i] ^ zero.ciphertext[i]) != plaintext[i]) return true;
  }
  return false;
}

}  // namespace symfrog::aead
