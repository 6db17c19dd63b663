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

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace seal::crypto {

namespace {

// Keccak-f[1600] permutation. Round constants and rotation offsets are the
// standard published values.
constexpr std::uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr int kRotc[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                           27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};
constexpr int kPiln[24] = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                           15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline std::uint64_t rotl64(std::uint64_t x, int n) {
  return (x << n) | (x >> (64 - n));
}

void keccakf(std::uint64_t st[25]) {
  for (int round = 0; round < 24; ++round) {
    // theta
    std::uint64_t bc[5];
    for (int i = 0; i < 5; ++i)
      bc[i] = st[i] ^ st[i + 5] ^ st[i + 10] ^ st[i + 15] ^ st[i + 20];
    for (int i = 0; i < 5; ++i) {
      std::uint64_t t = bc[(i + 4) % 5] ^ rotl64(bc[(i + 1) % 5], 1);
      for (int j = 0; j < 25; j += 5) st[j + i] ^= t;
    }
    // rho + pi
    std::uint64_t t = st[1];
    for (int i = 0; i < 24; ++i) {
      int j = kPiln[i];
      std::uint64_t tmp = st[j];
      st[j] = rotl64(t, kRotc[i]);
      t = tmp;
    }
    // chi
    for (int j = 0; j < 25; j += 5) {
      std::uint64_t row[5];
      for (int i = 0; i < 5; ++i) row[i] = st[j + i];
      for (int i = 0; i < 5; ++i)
        st[j + i] = row[i] ^ ((~row[(i + 1) % 5]) & row[(i + 2) % 5]);
    }
    // iota
    st[0] ^= kRoundConstants[round];
  }
}

constexpr std::size_t kRate = 136;  // 1088-bit rate for 256-bit output

}  // namespace

Digest keccak256(const std::uint8_t *data, std::size_t len) {
  std::uint64_t st[25] = {0};
  std::uint8_t block[kRate];

  // absorb full blocks
  while (len >= kRate) {
    for (std::size_t i = 0; i < kRate / 8; ++i) {
      std::uint64_t w;
      std::memcpy(&w, data + 8 * i, 8);  // little-endian hosts only (x86/arm64)
      st[i] ^= w;
    }
    keccakf(st);
    data += kRate;
    len -= kRate;
  }

  // final partial block with original Keccak padding 0x01 ... 0x80
  std::memset(block, 0, sizeof(block));
  if (len) std::memcpy(block, data, len);
  block[len] = 0x01;
  block[kRate - 1] |= 0x80;
  for (std::size_t i = 0; i < kRate / 8; ++i) {
    std::uint64_t w;
    std::memcpy(&w, block + 8 * i, 8);
    st[i] ^= w;
  }
  keccakf(st);

  Digest out{};
  std::memcpy(out.data(), st, out.size());
  return out;
}

Digest keccak256(const Bytes &data) { return keccak256(data.data(), data.size()); }

Digest keccak256(std::string_view data) {
  return keccak256(reinterpret_cast<const std::uint8_t *>(data.data()), data.size());
}

std::string to_hex(const std::uint8_t *data, std::size_t len) {
  static const char *digits = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0x0f]);
  }
  return out;
}

std::string to_hex(const Digest &d) { return to_hex(d.data(), d.size()); }
std::string to_hex(const Bytes &b) { return to_hex(b.data(), b.size()); }

std::optional<Bytes> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]), lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

void init() {
  if (sodium_init() < 0) throw std::runtime_error("libsodium initialization failed");
}

namespace {
// Any binary touching this translation unit gets libsodium set up before
// main(); explicit init() stays available for early-failure diagnostics.
[[maybe_unused]] const bool kSodiumReady = [] {
  init();
  return true;
}();
}  // namespace

SigningKey SigningKey::from_seed(const std::array<std::uint8_t, 32> &seed) {
  SigningKey key;
  crypto_sign_seed_keypair(key.pk.data(), key.sk.data(), seed.data());
  return key;
}

Bytes sign_detached(const SigningKey &key, std::string_view msg) {
  Bytes sig(crypto_sign_BYTES);
  if (crypto_sign_detached(sig.data(), nullptr,
                           reinterpret_cast<const std::uint8_t *>(msg.data()), msg.size(),
                           key.sk.data()) != 0)
    throw std::runtime_error("sign_detached failed");
  return sig;
}

bool verify_detached(const std::array<std::uint8_t, 32> &pk, std::string_view msg,
                     const Bytes &sig) {
  if (sig.size() != crypto_sign_BYTES) return false;
  return crypto_sign_verify_detached(sig.data(),
                                     reinterpret_cast<const std::uint8_t *>(msg.data()),
                                     msg.size(), pk.data()) == 0;
}

BoxKey BoxKey::from_seed(const std::array<std::uint8_t, 32> &seed) {
  BoxKey key;
  crypto_box_seed_keypair(key.pk.data(), key.sk.data(), seed.data());
  return key;
}

BoxNonce box_nonce(std::uint64_t counter) {
  BoxNonce n{};
  for (int i = 0; i < 8; ++i) n[i] = static_cast<std::uint8_t>(counter >> (8 * i));
  return n;
}

Bytes box_encrypt(const BoxKey &sender, const std::array<std::uint8_t, 32> &receiver_pk,
                  const BoxNonce &nonce, const Bytes &plaintext) {
  Bytes ct(plaintext.size() + crypto_box_MACBYTES);
  if (crypto_box_easy(ct.data(), plaintext.data(), plaintext.size(), nonce.data(),
                      receiver_pk.data(), sender.sk.data()) != 0)
    throw std::runtime_error("box_encrypt failed");
  return ct;
}

std::optional<Bytes> box_decrypt(const BoxKey &receiver,
                                 const std::array<std::uint8_t, 32> &sender_pk,
                                 const BoxNonce &nonce, const Bytes &ciphertext) {
  if (ciphertext.size() < crypto_box_MACBYTES) return std::nullopt;
  Bytes pt(ciphertext.size() - crypto_box_MACBYTES);
  if (crypto_box_open_easy(pt.data(), ciphertext.data(), ciphertext.size(), nonce.data(),
                           sender_pk.data(), receiver.sk.data()) != 0)
    return std::nullopt;
  return pt;
}

Bytes secretbox_encrypt(const SecretKey &key, const BoxNonce &nonce, const Bytes &plaintext) {
  Bytes ct(plaintext.size() + crypto_secretbox_MACBYTES);
  if (crypto_secretbox_easy(ct.data(), plaintext.data(), plaintext.size(), nonce.data(),
                            key.data()) != 0)
    throw std::runtime_error("secretbox_encrypt failed");
  return ct;
}

std::optional<Bytes> secretbox_decrypt(const SecretKey &key, const BoxNonce &nonce,
                                       const Bytes &ciphertext) {
  if (ciphertext.size() < crypto_secretbox_MACBYTES) return std::nullopt;
  Bytes pt(ciphertext.size() - crypto_secretbox_MACBYTES);
  if (crypto_secretbox_open_easy(pt.data(), ciphertext.data(), ciphertext.size(),
                                 nonce.data(), key.data()) != 0)
    return std::nullopt;
  return pt;
}

}  // namespace seal::crypto
