#pragma once
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

// Crypto primitives used by the exchange protocol.
//
// Keccak-256 (the original Keccak padding, as used by Ethereum — NOT the
// SHA3-256 FIPS variant) is implemented here because every hashchain element
// and on-ledger digest is defined in terms of it.
//
// Signatures and authenticated encryption are deliberately behind thin
// wrappers: the protocol only depends on the sign/verify and seal/open
// contracts, not on the concrete algorithms. The wrappers use libsodium
// (Ed25519, X25519 + XSalsa20-Poly1305).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seal::crypto {

using Digest = std::array<std::uint8_t, 32>;
using Bytes = std::vector<std::uint8_t>;

// ---------------------------------------------------------------------------
// Keccak-256
Digest keccak256(const std::uint8_t *data, std::size_t len);
Digest keccak256(const Bytes &data);
Digest keccak256(std::string_view data);

std::string to_hex(const std::uint8_t *data, std::size_t len);
std::string to_hex(const Digest &d);
std::string to_hex(const Bytes &b);
std::optional<Bytes> from_hex(std::string_view hex);

inline Bytes le64(std::uint64_t v) {
  Bytes out(8);
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return out;
}

// ---------------------------------------------------------------------------
// libsodium wrappers. init() is idempotent and must run before any of these.
void init();

struct SigningKey {
  std::array<std::uint8_t, 32> pk{};
  std::array<std::uint8_t, 64> sk{};
  static SigningKey from_seed(const std::array<std::uint8_t, 32> &seed);
  std::string pk_hex() const { return to_hex(pk.data(), pk.size()); }
};

Bytes sign_detached(const SigningKey &key, std::string_view msg);
bool verify_detached(const std::array<std::uint8_t, 32> &pk, std::string_view msg,
                     const Bytes &sig);

// Public-key authenticated encryption (sender sk + receiver pk). Nonces are
// caller-supplied counters so runs stay deterministic under a fixed seed.
struct BoxKey {
  std::array<std::uint8_t, 32> pk{};
  std::array<std::uint8_t, 32> sk{};
  static BoxKey from_seed(const std::array<std::uint8_t, 32> &seed);
};

using BoxNonce = std::array<std::uint8_t, 24>;
BoxNonce box_nonce(std::uint64_t counter);

Bytes box_encrypt(const BoxKey &sender, const std::array<std::uint8_t, 32> &receiver_pk,
                  const BoxNonce &nonce, const Bytes &plaintext);
std::optional<Bytes> box_decrypt(const BoxKey &receiver,
                                 const std::array<std::uint8_t, 32> &sender_pk,
                                 const BoxNonce &nonce, const Bytes &ciphertext);

// Secret-key authenticated encryption for the per-task result key k_i^l.
using SecretKey = std::array<std::uint8_t, 32>;
Bytes secretbox_encrypt(const SecretKey &key, const BoxNonce &nonce, const Bytes &plaintext);
std::optional<Bytes> secretbox_decrypt(const SecretKey &key, const BoxNonce &nonce,
                                       const Bytes &ciphertext);

}  // namespace seal::crypto
