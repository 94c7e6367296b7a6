#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nsb/common/sim_time.h"
#include "nsb/contracts/transfer.h"

namespace nsb::contracts {

inline constexpr std::string_view kAuctionContract = "slice_auction";

struct Bid {
  TenantId peer = 0;
  double value = 0.0;
  SimTime arrival = 0;
};

struct AuctionSpec {
  SimTime auction_end_time = 0;
  TenantId seller = 0;
  // Amount per resource type handed to the winner.
  std::vector<std::int64_t> resource_set;
  std::vector<Bid> bids;
};

// Highest bid arriving no later than auction_end_time. Ties go to the earlier
// arrival, then to the smaller peer id. nullopt when no bid qualifies.
std::optional<TenantId> select_auction_winner(const AuctionSpec& spec);

struct AuctionResult {
  std::optional<TenantId> winner;
  // Moves resource_set from the seller to the winner; empty without a winner.
  ContractEffect effect;
};

// Throws std::invalid_argument if the seller does not hold resource_set.
AuctionResult run_auction(const AuctionSpec& spec, const ledger::WorldState& snapshot);

// Payload recording a closed auction: seller, end time, resource set and
// winner (ledger::kRegistryOwner when nobody won).
ledger::Payload encode_auction(const AuctionSpec& spec, std::optional<TenantId> winner);

// Collects bids as they arrive and closes at the end time.
class AuctionBook {
 public:
  AuctionBook(SimTime end_time, TenantId seller, std::vector<std::int64_t> resource_set);

  // Returns false (and ignores the bid) if it arrives after the end time.
  bool place_bid(const Bid& bid);
  bool open_at(SimTime now) const { return now <= spec_.auction_end_time; }
  const AuctionSpec& spec() const { return spec_; }

 private:
  AuctionSpec spec_;
};

}  // namespace nsb::contracts
