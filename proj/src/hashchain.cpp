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

#include "seal/hashchain.hpp"

#include <stdexcept>

namespace seal::hashchain {

namespace {

crypto::Digest link(const crypto::Digest &next, std::int64_t payment_micro) {
  if (payment_micro < 0) throw std::invalid_argument("hashchain: negative payment");
  crypto::Bytes buf(next.begin(), next.end());
  const auto amount = crypto::le64(static_cast<std::uint64_t>(payment_micro));
  buf.insert(buf.end(), amount.begin(), amount.end());
  return crypto::keccak256(buf);
}

}  // namespace

Chain build(const std::vector<std::int64_t> &payments_micro, const crypto::Digest &tail) {
  const int n = static_cast<int>(payments_micro.size());
  Chain chain;
  chain.payments_micro = payments_micro;
  chain.elems.assign(n + 2, crypto::Digest{});
  chain.elems[n + 1] = tail;
  for (int z = n; z >= 1; --z)
    chain.elems[z] = link(chain.elems[z + 1], payments_micro[z - 1]);
  chain.elems[0] = crypto::keccak256(chain.elems[1].data(), chain.elems[1].size());
  return chain;
}

crypto::Digest fold_payword(const crypto::Digest &payword, int claimed_count,
                            const std::vector<std::int64_t> &payments_micro) {
  if (claimed_count < 0 || claimed_count > static_cast<int>(payments_micro.size()))
    throw std::invalid_argument("fold_payword: claimed count out of range");
  crypto::Digest x = payword;
  for (int z = claimed_count; z >= 1; --z) x = link(x, payments_micro[z - 1]);
  return crypto::keccak256(x.data(), x.size());
}

bool verify_claim(const crypto::Digest &root, const crypto::Digest &payword,
                  int claimed_count, const std::vector<std::int64_t> &payments_micro) {
  if (claimed_count < 0 || claimed_count > static_cast<int>(payments_micro.size()))
    return false;
  return fold_payword(payword, claimed_count, payments_micro) == root;
}

}  // namespace seal::hashchain
