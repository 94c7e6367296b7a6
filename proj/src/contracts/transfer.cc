#include "nsb/contracts/transfer.h"

#include <stdexcept>

namespace nsb::contracts {

std::string_view to_string(CollisionReason reason) {
  switch (reason) {
    case CollisionReason::kInsufficientAvailability:
      return "INSUFFICIENT_AVAILABILITY";
    case CollisionReason::kNoRemainingNeed:
      return "NO_REMAINING_NEED";
  }
  return "UNKNOWN";
}

TransferOutcome simulate_transfer(const ledger::WorldState& snapshot,
                                  const TenantDirectory& dir, const SliceRequest& sr) {
  if (!sr.counterparty) throw std::invalid_argument("counterparty not resolved");
  if (!sr.well_formed()) throw std::invalid_argument("malformed slice request");
  const TenantAccount& requester = dir.at(sr.requester);
  const TenantId other = *sr.counterparty;
  if (other != ledger::kRegistryOwner) dir.at(other);
  if (other == sr.requester) throw std::invalid_argument("self transfer");

  const bool acquire = sr.direction == Direction::kAcquire;
  const TenantId giver = acquire ? other : sr.requester;
  const TenantId receiver = acquire ? sr.requester : other;
  const SliceVector amounts = request_amounts(requester, sr);

  for (ResourceType r = 0; r < kSliceResources; ++r) {
    if (amounts[r] > available(snapshot, dir, giver, r)) {
      return Collision{CollisionReason::kInsufficientAvailability};
    }
  }
  for (ResourceType r = 0; r < kSliceResources; ++r) {
    if (amounts[r] > remaining_need(snapshot, dir, receiver, r)) {
      return Collision{CollisionReason::kNoRemainingNeed};
    }
  }

  ContractEffect effect;
  for (ResourceType r = 0; r < kSliceResources; ++r) {
    if (amounts[r] == 0) continue;
    const ledger::StateKey from{giver, r};
    const ledger::StateKey to{receiver, r};
    effect.read_set.push_back({from, snapshot.version(from)});
    effect.read_set.push_back({to, snapshot.version(to)});
    effect.write_set.push_back({from, snapshot.value(from) - amounts[r]});
    effect.write_set.push_back({to, snapshot.value(to) + amounts[r]});
  }
  if (effect.write_set.empty()) {
    // Every component rounded to zero units: nothing the receiver can use.
    return Collision{CollisionReason::kInsufficientAvailability};
  }
  return effect;
}

ledger::Payload encode_transfer(const TransferArgs& args) {
  Encoder enc;
  enc.put_u32(args.requester);
  enc.put_u32(args.counterparty);
  enc.put_u8(static_cast<std::uint8_t>(args.direction));
  for (std::int64_t a : args.amounts) enc.put_i64(a);
  return ledger::Payload{std::string(kTransferContract), enc.take()};
}

TransferArgs decode_transfer(const ledger::Payload& payload) {
  if (payload.contract != kTransferContract) {
    throw std::invalid_argument("not a transfer payload: " + payload.contract);
  }
  Decoder dec(payload.args);
  TransferArgs args;
  args.requester = dec.get_u32();
  args.counterparty = dec.get_u32();
  const std::uint8_t dir = dec.get_u8();
  if (dir > 1) throw DecodeError("bad transfer direction");
  args.direction = static_cast<Direction>(dir);
  for (std::int64_t& a : args.amounts) a = dec.get_i64();
  if (!dec.done()) throw DecodeError("trailing transfer arguments");
  return args;
}

}  // namespace nsb::contracts
