#include "symfrog/xof.hpp"

#include <openssl/evp.h>

#include <memory>

#include "symfrog/io.hpp"

namespace symfrog {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

MdCtx new_ctx(const EVP_MD* md) {
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1) {
    throw Error("OpenSSL digest initialization failed");
  }
  return ctx;
}

void update(EVP_MD_CTX* ctx, ByteView data) {
  if (EVP_DigestUpdate(ctx, data.data(), data.size()) != 1) throw Error("OpenSSL digest update failed");
}

}  // namespace

Bytes shake256(ByteView input, std::size_t out_len) {
  auto ctx = new_ctx(EVP_shake256());
  update(ctx.get(), input);
  Bytes out(out_len);
  if (EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) throw Error("SHAKE256 squeeze failed");
  return out;
}

Sha256Digest sha256(ByteView input) {
  auto ctx = new_ctx(EVP_sha256());
  update(ctx.get(), input);
  Sha256Digest d{};
  if (EVP_DigestFinal_ex(ctx.get(), d.data(), nullptr) != 1) throw Error("SHA-256 final failed");
  return d;
}

Sha256Digest sha256_file(const std::filesystem::path& path) {
  FileSource src(path);
  auto ctx = new_ctx(EVP_sha256());
  std::vector<std::uint8_t> buf(1 << 16);
  while (const std::size_t n = src.read(buf)) update(ctx.get(), ByteView(buf.data(), n));
  Sha256Digest d{};
  if (EVP_DigestFinal_ex(ctx.get(), d.data(), nullptr) != 1) throw Error("SHA-256 final failed");
  return d;
}

}  // namespace symfrog
