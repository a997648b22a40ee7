#include "symfrog/container.hpp"

#include <algorithm>
#include <string_view>

#include "symfrog/aead.hpp"
#include "symfrog/duplex.hpp"

namespace symfrog::container {

namespace {

constexpr std::string_view kHeaderTagLabel = "SYMFROG-HDRTAG-v1";

struct ResolvedKey {
  Key key;
  std::uint32_t flags = 0;
  Salt salt{};
};

ResolvedKey resolve_for_encrypt(const KeySource& source) {
  ResolvedKey r;
  if (const auto* pass = std::get_if<Passphrase>(&source)) {
    r.flags = kFlagKeyDerived;
    r.salt = kdf::generate_salt();
    r.key = kdf::derive_key(pass->text, r.salt, pass->profile);
  } else {
    r.key = std::get<Key>(source);
  }
  return r;
}

void report(const Options& options, std::uint64_t done, std::uint64_t total) {
  if (options.progress) options.progress(done, total);
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Ok: return "ok";
    case Verdict::HeaderAuthFail: return "header authentication failed";
    case Verdict::BodyAuthFail: return "ciphertext authentication failed";
    case Verdict::FormatError: return "invalid or truncated container";
  }
  return "unknown";
}

HeaderBytes serialize_header(const Header& h) {
  HeaderBytes out{};
  std::copy(h.magic.begin(), h.magic.end(), out.begin() + offset::kMagic);
  store32_le(out.data() + offset::kVersion, h.version);
  store32_le(out.data() + offset::kFlags, h.flags);
  std::copy(h.salt.begin(), h.salt.end(), out.begin() + offset::kSalt);
  std::copy(h.nonce.begin(), h.nonce.end(), out.begin() + offset::kNonce);
  store64_le(out.data() + offset::kCtLen, h.ct_len);
  std::copy(h.reserved.begin(), h.reserved.end(), out.begin() + offset::kReserved);
  std::copy(h.header_tag.begin(), h.header_tag.end(), out.begin() + offset::kHeaderTag);
  return out;
}

Header parse_header(std::span<const std::uint8_t, kHeaderBytes> in) {
  Header h;
  auto field = [&](std::size_t off, auto& dst) {
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(off), dst.size(), dst.begin());
  };
  field(offset::kMagic, h.magic);
  h.version = load32_le(in.data() + offset::kVersion);
  h.flags = load32_le(in.data() + offset::kFlags);
  field(offset::kSalt, h.salt);
  field(offset::kNonce, h.nonce);
  h.ct_len = load64_le(in.data() + offset::kCtLen);
  field(offset::kReserved, h.reserved);
  field(offset::kHeaderTag, h.header_tag);
  return h;
}

Tag compute_header_tag(const Key& key, const Nonce& nonce, ByteView ad,
                       std::span<const std::uint8_t, kHeaderBytes> header_zeroed) {
  const auto tag_field = header_zeroed.subspan<offset::kHeaderTag>();
  if (std::any_of(tag_field.begin(), tag_field.end(), [](std::uint8_t b) { return b != 0; })) {
    throw std::invalid_argument("header_tag field must be zero when computing the header tag");
  }
  Bytes transcript;
  transcript.reserve(kHeaderTagLabel.size() + kHeaderBytes + ad.size());
  transcript.insert(transcript.end(), kHeaderTagLabel.begin(), kHeaderTagLabel.end());
  transcript.insert(transcript.end(), header_zeroed.begin(), header_zeroed.end());
  transcript.insert(transcript.end(), ad.begin(), ad.end());

  Duplex duplex(key, nonce);
  duplex.absorb(DomainByte::Header, transcript);
  return duplex.finalize(DomainByte::HeaderTag);
}

void encrypt(ByteSource& plaintext, std::uint64_t length, ByteSink& out, const KeySource& key_source,
             ByteView ad, const Options& options) {
  const ResolvedKey rk = resolve_for_encrypt(key_source);

  Header h;
  h.flags = rk.flags;
  h.salt = rk.salt;
  if (options.nonce) {
    h.nonce = *options.nonce;
  } else {
    kdf::random_bytes(h.nonce);
  }
  h.ct_len = length;
  h.header_tag = compute_header_tag(rk.key, h.nonce, ad, serialize_header(h));
  out.write(serialize_header(h));

  aead::Encryptor enc(rk.key, h.nonce, ad);
  LimitedSource body(plaintext, length);
  Bytes buf(aead::kStreamChunk);
  std::uint64_t done = 0;
  report(options, 0, length);
  while (const std::size_t n = body.read(buf)) {
    enc.update(ByteView(buf.data(), n), out);
    done += n;
    report(options, done, length);
  }
  std::array<std::uint8_t, 1> extra{};
  if (done != length || plaintext.read(extra) != 0) {
    secure_zero(buf.data(), buf.size());
    throw IoError("input size changed while encrypting");
  }
  const Tag tag = enc.finish(out);
  out.write(tag);
  secure_zero(buf.data(), buf.size());
}

Verdict decrypt(ByteSource& input, std::uint64_t total_size, ByteSink& out, const KeySource& key_source,
                ByteView ad, const Options& options) {
  if (total_size < kHeaderBytes) return Verdict::FormatError;
  HeaderBytes hb{};
  if (read_fully(input, hb) != kHeaderBytes) return Verdict::FormatError;
  const Header h = parse_header(hb);

  // Structural checks before any cryptography.
  if (h.magic != kMagic || h.version != kVersion) return Verdict::FormatError;
  if ((h.flags & ~kFlagKeyDerived) != 0) return Verdict::FormatError;
  if (total_size < kOverheadBytes || h.ct_len != total_size - kOverheadBytes) {
    return Verdict::FormatError;
  }

  // A header whose key mode differs from the supplied key source cannot be
  // authenticated with it.
  const bool derived = (h.flags & kFlagKeyDerived) != 0;
  const auto* pass = std::get_if<Passphrase>(&key_source);
  if (derived != (pass != nullptr)) return Verdict::HeaderAuthFail;
  const Key key = pass ? kdf::derive_key(pass->text, h.salt, pass->profile) : std::get<Key>(key_source);

  HeaderBytes zeroed = hb;
  std::fill(zeroed.begin() + offset::kHeaderTag, zeroed.end(), std::uint8_t{0});
  const Tag expected_header_tag = compute_header_tag(key, h.nonce, ad, zeroed);
  if (!constant_time_eq(expected_header_tag, h.header_tag)) return Verdict::HeaderAuthFail;

  aead::Decryptor dec(key, h.nonce, ad);
  LimitedSource body(input, h.ct_len);
  Bytes buf(aead::kStreamChunk);
  std::uint64_t done = 0;
  report(options, 0, h.ct_len);
  while (const std::size_t n = body.read(buf)) {
    dec.update(ByteView(buf.data(), n), out);
    done += n;
    report(options, done, h.ct_len);
  }
  secure_zero(buf.data(), buf.size());
  if (done != h.ct_len) return Verdict::FormatError;

  Tag stored_tag{};
  if (read_fully(input, stored_tag) != kTagBytes) return Verdict::FormatError;
  const Tag computed = dec.finish(out);
  return constant_time_eq(computed, stored_tag) ? Verdict::Ok : Verdict::BodyAuthFail;
}

void encrypt_file(const std::filesystem::path& in_path, const std::filesystem::path& out_path,
                  const KeySource& key, ByteView ad, const Options& options) {
  FileSource in(in_path);
  const std::uint64_t length = in.size();
  AtomicOutputFile out(out_path);
  encrypt(in, length, out, key, ad, options);
  if (options.before_commit) options.before_commit();
  out.commit();
}

Verdict decrypt_file(const std::filesystem::path& in_path, const std::filesystem::path& out_path,
                     const KeySource& key, ByteView ad, const Options& options) {
  FileSource in(in_path);
  const std::uint64_t size = in.size();
  AtomicOutputFile out(out_path);
  const Verdict v = decrypt(in, size, out, key, ad, options);
  if (v != Verdict::Ok) {
    out.discard();
    return v;
  }
  if (options.before_commit) options.before_commit();
  out.commit();
  return v;
}

}  // namespace symfrog::container
