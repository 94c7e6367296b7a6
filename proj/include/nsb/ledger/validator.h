#pragma once

#include <stdexcept>
#include <vector>

#include "nsb/ledger/types.h"
#include "nsb/ledger/world_state.h"

namespace nsb::ledger {

class HeightMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Loads the genesis block into an empty state: every write lands at version
// (0,0) and the per-type totals become the conserved capacity.
void apply_genesis(WorldState& state, const Block& genesis);

// MVCC validation of `block` against `state`, in block order.
//
// A transaction commits iff its signature verifies and each read matches the
// key's version at the moment it is processed (earlier transactions of the
// same block included). Entries already flagged kSrCollision on input stay
// flagged. A transaction whose writes would break per-type conservation or
// drive a holding negative is flagged kSrCollision at this point. Committed
// writes get version (block.height, index).
//
// Writes the resulting flags into block.validity and returns them. Throws
// HeightMismatch unless block.height is the next height.
std::vector<TxValidity> validate_and_commit(WorldState& state, Block& block);

}  // namespace nsb::ledger
