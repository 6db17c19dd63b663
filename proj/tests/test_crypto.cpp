//------------------------------------------------------------------------------
//
//   Copyright 2025-2026 The sealsim Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "seal/crypto.hpp"

#include <gtest/gtest.h>

#include <string>

namespace seal::crypto {
namespace {

// Original Keccak-256 (pre-FIPS padding, 0x01 domain byte). These are the
// widely published reference digests; SHA3-256 would produce different ones.
TEST(Keccak, ReferenceVectors) {
  EXPECT_EQ(to_hex(keccak256("")),
            "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
  EXPECT_EQ(to_hex(keccak256("abc")),
            "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
  EXPECT_EQ(to_hex(keccak256("The quick brown fox jumps over the lazy dog")),
            "4d741b6f1eb29cb2a9b9911c82f56fa8d73b04959d3d9d222895df6c0b28aa15");
}

TEST(Keccak, OverloadsAgree) {
  const std::string msg = "payword chain element";
  Bytes as_bytes(msg.begin(), msg.end());
  EXPECT_EQ(keccak256(msg), keccak256(as_bytes));
  EXPECT_EQ(keccak256(msg), keccak256(as_bytes.data(), as_bytes.size()));
}

TEST(Keccak, MultiBlockInput) {
  // 200 bytes exceeds the 136-byte rate, forcing a second absorb round.
  std::string long_msg(200, 'a');
  EXPECT_EQ(to_hex(keccak256(long_msg)),
            "96ea54061def936c4be90b518992fdc6f12f535068a256229aca54267b4d084d");
  EXPECT_NE(to_hex(keccak256(long_msg)), to_hex(keccak256(std::string(199, 'a'))));
}

TEST(Hex, RoundTrip) {
  Bytes data = {0x00, 0x01, 0xab, 0xff, 0x7e};
  const auto hex = to_hex(data);
  EXPECT_EQ(hex, "0001abff7e");
  const auto back = from_hex(hex);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, data);
}

TEST(Hex, RejectsMalformed) {
  EXPECT_FALSE(from_hex("abc").has_value());   // odd length
  EXPECT_FALSE(from_hex("zz").has_value());    // non-hex chars
  ASSERT_TRUE(from_hex("").has_value());       // empty is a valid empty string
  EXPECT_TRUE(from_hex("")->empty());
}

TEST(Le64, LittleEndianLayout) {
  const auto b = le64(0x0102030405060708ULL);
  ASSERT_EQ(b.size(), 8u);
  EXPECT_EQ(b[0], 0x08);
  EXPECT_EQ(b[7], 0x01);
  EXPECT_EQ(le64(0), Bytes(8, 0x00));
}

TEST(Sign, RoundTripAndTamper) {
  const auto key = SigningKey::from_seed({1, 2, 3});
  const std::string msg = "allocation posting";
  const auto sig = sign_detached(key, msg);
  EXPECT_TRUE(verify_detached(key.pk, msg, sig));
  EXPECT_FALSE(verify_detached(key.pk, "allocation posting!", sig));

  auto bad_sig = sig;
  bad_sig[0] ^= 0x01;
  EXPECT_FALSE(verify_detached(key.pk, msg, bad_sig));

  const auto other = SigningKey::from_seed({9});
  EXPECT_FALSE(verify_detached(other.pk, msg, sig));
}

TEST(Sign, DeterministicFromSeed) {
  const auto a = SigningKey::from_seed({42});
  const auto b = SigningKey::from_seed({42});
  EXPECT_EQ(a.pk_hex(), b.pk_hex());
  EXPECT_EQ(sign_detached(a, "m"), sign_detached(b, "m"));
}

TEST(Box, RoundTripAndWrongReceiver) {
  const auto sender = BoxKey::from_seed({7});
  const auto receiver = BoxKey::from_seed({8});
  const auto intruder = BoxKey::from_seed({9});
  const Bytes plaintext = {0xde, 0xad, 0xbe, 0xef};
  const auto nonce = box_nonce(3);

  const auto ct = box_encrypt(sender, receiver.pk, nonce, plaintext);
  EXPECT_NE(ct, plaintext);

  const auto pt = box_decrypt(receiver, sender.pk, nonce, ct);
  ASSERT_TRUE(pt.has_value());
  EXPECT_EQ(*pt, plaintext);

  EXPECT_FALSE(box_decrypt(intruder, sender.pk, nonce, ct).has_value());

  auto tampered = ct;
  tampered.back() ^= 0x01;
  EXPECT_FALSE(box_decrypt(receiver, sender.pk, nonce, tampered).has_value());
}

TEST(Box, NonceCounterIsStable) {
  EXPECT_EQ(box_nonce(5), box_nonce(5));
  EXPECT_NE(box_nonce(5), box_nonce(6));
}

TEST(Secretbox, RoundTripAndTamper) {
  SecretKey key{};
  key.fill(0x5c);
  const Bytes plaintext = {1, 2, 3, 4, 5};
  const auto nonce = box_nonce(11);

  const auto ct = secretbox_encrypt(key, nonce, plaintext);
  const auto pt = secretbox_decrypt(key, nonce, ct);
  ASSERT_TRUE(pt.has_value());
  EXPECT_EQ(*pt, plaintext);

  SecretKey wrong = key;
  wrong[0] ^= 0x01;
  EXPECT_FALSE(secretbox_decrypt(wrong, nonce, ct).has_value());

  auto tampered = ct;
  tampered[0] ^= 0x01;
  EXPECT_FALSE(secretbox_decrypt(key, nonce, tampered).has_value());
}

}  // namespace
}  // namespace seal::crypto
