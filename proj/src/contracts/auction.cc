#include "nsb/contracts/auction.h"

#include <stdexcept>

namespace nsb::contracts {

std::optional<TenantId> select_auction_winner(const AuctionSpec& spec) {
  const Bid* best = nullptr;
  for (const Bid& bid : spec.bids) {
    if (bid.arrival > spec.auction_end_time) continue;
    if (!best || bid.value > best->value ||
        (bid.value == best->value &&
         (bid.arrival < best->arrival ||
          (bid.arrival == best->arrival && bid.peer < best->peer)))) {
      best = &bid;
    }
  }
  if (!best) return std::nullopt;
  return best->peer;
}

AuctionResult run_auction(const AuctionSpec& spec, const ledger::WorldState& snapshot) {
  AuctionResult result;
  result.winner = select_auction_winner(spec);
  if (!result.winner || *result.winner == spec.seller) return result;
  for (ResourceType r = 0; r < spec.resource_set.size(); ++r) {
    const std::int64_t amount = spec.resource_set[r];
    if (amount == 0) continue;
    const ledger::StateKey from{spec.seller, r};
    const ledger::StateKey to{*result.winner, r};
    if (amount < 0 || snapshot.value(from) < amount) {
      throw std::invalid_argument("seller does not hold the auctioned resources");
    }
    result.effect.read_set.push_back({from, snapshot.version(from)});
    result.effect.read_set.push_back({to, snapshot.version(to)});
    result.effect.write_set.push_back({from, snapshot.value(from) - amount});
    result.effect.write_set.push_back({to, snapshot.value(to) + amount});
  }
  return result;
}

ledger::Payload encode_auction(const AuctionSpec& spec, std::optional<TenantId> winner) {
  Encoder enc;
  enc.put_u32(spec.seller);
  enc.put_i64(spec.auction_end_time);
  enc.put_u32(static_cast<std::uint32_t>(spec.resource_set.size()));
  for (std::int64_t a : spec.resource_set) enc.put_i64(a);
  enc.put_u32(winner.value_or(ledger::kRegistryOwner));
  return ledger::Payload{std::string(kAuctionContract), enc.take()};
}

AuctionBook::AuctionBook(SimTime end_time, TenantId seller,
                         std::vector<std::int64_t> resource_set) {
  spec_.auction_end_time = end_time;
  spec_.seller = seller;
  spec_.resource_set = std::move(resource_set);
}

bool AuctionBook::place_bid(const Bid& bid) {
  if (bid.arrival > spec_.auction_end_time) return false;
  spec_.bids.push_back(bid);
  return true;
}

}  // namespace nsb::contracts
