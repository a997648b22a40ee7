#include <gtest/gtest.h>
#include <sodium.h>

#include <set>

#include "argon2_abi.hpp"
#include "symfrog/kdf.hpp"

using namespace symfrog;

namespace {

// Small profile so the property tests stay fast; the real profiles are
// exercised separately.
constexpr kdf::Profile kTiny{"TINY", 2, std::size_t{8} << 20};

Salt counting_salt() {
  Salt s{};
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::uint8_t>(i);
  return s;
}

}  // namespace

TEST(Kdf, ProfilesArePinned) {
  EXPECT_EQ(kdf::kModerate.ops_limit, 3u);
  EXPECT_EQ(kdf::kModerate.mem_limit, std::size_t{256} * 1024 * 1024);
  EXPECT_EQ(kdf::kSensitive.ops_limit, 4u);
  EXPECT_EQ(kdf::kSensitive.mem_limit, std::size_t{1024} * 1024 * 1024);
}

TEST(Kdf, Deterministic) {
  const Key a = kdf::derive_key("correct horse", counting_salt(), kTiny);
  const Key b = kdf::derive_key("correct horse", counting_salt(), kTiny);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.size(), 128u);
}

TEST(Kdf, EverySaltByteMatters) {
  const Key base = kdf::derive_key("pw", counting_salt(), kTiny);
  for (std::size_t i : {0u, 15u, 16u, 31u}) {
    Salt s = counting_salt();
    s[i] ^= 1;
    EXPECT_FALSE(kdf::derive_key("pw", s, kTiny) == base) << "salt byte " << i;
  }
}

TEST(Kdf, PassphraseAndProfileMatter) {
  const Key base = kdf::derive_key("pw", counting_salt(), kTiny);
  EXPECT_FALSE(kdf::derive_key("pX", counting_salt(), kTiny) == base);
  EXPECT_FALSE(kdf::derive_key("", counting_salt(), kTiny) == base);
  constexpr kdf::Profile other{"OTHER", 3, std::size_t{8} << 20};
  EXPECT_FALSE(kdf::derive_key("pw", counting_salt(), other) == base);
}

TEST(Kdf, MatchesLibsodiumArgon2id) {
  // Independent Argon2id v1.3 implementation; libsodium fixes the salt at 16
  // bytes and one lane, so compare on that shape.
  ASSERT_GE(sodium_init(), 0);
  std::array<std::uint8_t, crypto_pwhash_SALTBYTES> salt{};
  for (std::size_t i = 0; i < salt.size(); ++i) salt[i] = static_cast<std::uint8_t>(0xA0 + i);
  const std::string pw = "cross-check";
  std::array<std::uint8_t, 128> ours{}, theirs{};

  ASSERT_EQ(argon2id_hash_raw(3, 8 * 1024, 1, pw.data(), pw.size(), salt.data(), salt.size(), ours.data(),
                              ours.size()),
            kArgon2Ok);
  ASSERT_EQ(crypto_pwhash(theirs.data(), theirs.size(), pw.data(), pw.size(), salt.data(), 3,
                          std::size_t{8} << 20, crypto_pwhash_ALG_ARGON2ID13),
            0);
  EXPECT_EQ(ours, theirs);
}

TEST(Kdf, ModerateProfileRuns) {
  const Key a = kdf::derive_key("mypw", counting_salt(), kdf::kModerate);
  const Key b = kdf::derive_key("mypw", counting_salt(), kdf::kModerate);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == kdf::derive_key("mypw", counting_salt(), kTiny));
}

TEST(Kdf, SensitiveProfileRuns) {
  const Key a = kdf::derive_key("mypw", counting_salt(), kdf::kSensitive);
  EXPECT_FALSE(a == kdf::derive_key("mypw", counting_salt(), kdf::kModerate));
}

TEST(Kdf, ImpossibleMemoryIsAnError) {
  constexpr kdf::Profile absurd{"ABSURD", 1, std::size_t{4} << 40};
  EXPECT_THROW(kdf::derive_key("pw", counting_salt(), absurd), KdfError);
  constexpr kdf::Profile no_passes{"ZERO", 0, std::size_t{8} << 20};
  EXPECT_THROW(kdf::derive_key("pw", counting_salt(), no_passes), KdfError);
}

TEST(Salt, FreshRandomAndNonZero) {
  std::set<Salt> seen;
  for (int i = 0; i < 10; ++i) {
    const Salt s = kdf::generate_salt();
    EXPECT_EQ(s.size(), 32u);
    EXPECT_TRUE(std::any_of(s.begin(), s.end(), [](std::uint8_t b) { return b != 0; }));
    seen.insert(s);
  }
  EXPECT_EQ(seen.size(), 10u);
}
