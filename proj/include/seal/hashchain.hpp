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

// Amount-binding payword chain for pay-per-task micropayments. For payments
// p^1..p^n (integer micro units) and a secret random tail h^{n+1}:
//
//   h^z = H(h^{z+1} || le64(p^z))   for z = n..1
//   h^0 = H(h^1)                    committed on the ledger
//
// Revealing h^{l+1} ("payword l") proves the payer authorized the first l
// payments: anyone can fold it back down to h^0 using the public amounts.
// Chains are n+2 elements long; each amount is hashed in, so a claim that
// lies about any p^z lands on a different root.

#include <cstdint>
#include <vector>

#include "seal/crypto.hpp"

namespace seal::hashchain {

struct Chain {
  std::vector<crypto::Digest> elems;        // h^0 .. h^{n+1}
  std::vector<std::int64_t> payments_micro; // payments_micro[z-1] = p^z

  const crypto::Digest &root() const { return elems.front(); }
  // Payword authorizing cumulative payment of tasks 1..l (1-based l <= n).
  const crypto::Digest &payword(int l) const { return elems.at(l + 1); }
  int size() const { return static_cast<int>(payments_micro.size()); }
};

Chain build(const std::vector<std::int64_t> &payments_micro, const crypto::Digest &tail);

// Fold a claimed payword for `claimed_count` tasks down to the implied root.
crypto::Digest fold_payword(const crypto::Digest &payword, int claimed_count,
                            const std::vector<std::int64_t> &payments_micro);

// True iff (payword, claimed_count) folds to `root` under the public amounts.
bool verify_claim(const crypto::Digest &root, const crypto::Digest &payword,
                  int claimed_count, const std::vector<std::int64_t> &payments_micro);

}  // namespace seal::hashchain
