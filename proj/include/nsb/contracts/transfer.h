#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "nsb/contracts/slice_request.h"
#include "nsb/ledger/types.h"
#include "nsb/ledger/world_state.h"

namespace nsb::contracts {

inline constexpr std::string_view kTransferContract = "slice_transfer";

// Read and write sets produced by simulating a contract on a snapshot.
struct ContractEffect {
  std::vector<ledger::ReadEntry> read_set;
  std::vector<ledger::WriteEntry> write_set;
  bool operator==(const ContractEffect&) const = default;
};

enum class CollisionReason { kInsufficientAvailability, kNoRemainingNeed };

std::string_view to_string(CollisionReason reason);

struct Collision {
  CollisionReason reason;
  bool operator==(const Collision&) const = default;
};

using TransferOutcome = std::variant<ContractEffect, Collision>;

// Simulates a resource transfer for `sr` on `snapshot`.
//
// For ACQUIRE the counterparty gives and the requester receives; RELEASE is
// the reverse. All three amounts move together or nothing moves: the giver
// must have each amount available and the receiver must still need each
// amount. The read set holds the touched keys of both parties at their
// snapshot versions; the write set holds their updated holdings.
//
// Throws UnknownTenant for parties missing from `dir`, std::invalid_argument
// for an OPEN counterparty or a malformed request.
TransferOutcome simulate_transfer(const ledger::WorldState& snapshot,
                                  const TenantDirectory& dir, const SliceRequest& sr);

// Transfer invocation as carried in Transaction::payload.
struct TransferArgs {
  TenantId requester = 0;
  TenantId counterparty = 0;
  Direction direction = Direction::kAcquire;
  SliceVector amounts{};
  bool operator==(const TransferArgs&) const = default;
};

ledger::Payload encode_transfer(const TransferArgs& args);
TransferArgs decode_transfer(const ledger::Payload& payload);

}  // namespace nsb::contracts
