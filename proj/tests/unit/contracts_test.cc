#include <gtest/gtest.h>

#include "nsb/common/rng.h"
#include "nsb/contracts/auction.h"
#include "nsb/contracts/registry.h"
#include "nsb/contracts/slice_request.h"
#include "nsb/contracts/transfer.h"
#include "nsb/ledger/chain.h"

using namespace nsb;
using namespace nsb::contracts;

namespace {

// Two tenants with base 1000 per type: 0 wants +100 of each, 1 wants −100.
struct Fixture {
  TenantDirectory dir;
  ledger::WorldState state;

  Fixture() {
    dir.add({0, {}, {1000, 1000, 1000}, {100, 100, 100}});
    dir.add({1, {}, {1000, 1000, 1000}, {-100, -100, -100}});
    for (ResourceType r = 0; r < kSliceResources; ++r) {
      state.put({0, r}, 1000, {1, 0});
      state.put({1, r}, 1000, {1, 0});
      state.put({ledger::kRegistryOwner, r}, 500, {1, 0});
    }
    state.set_capacity({2500, 2500, 2500});
    state.set_height(1);
  }
};

SliceRequest acquire(double pct, TenantId from = 1) {
  SliceRequest sr;
  sr.requester = 0;
  sr.counterparty = from;
  sr.rho = sr.eta = sr.gamma = pct;
  return sr;
}

}  // namespace

TEST(SliceRequest, WellFormedAndAmounts) {
  SliceRequest sr;
  EXPECT_FALSE(sr.well_formed());
  sr.rho = 1.5;
  EXPECT_TRUE(sr.well_formed());
  sr.eta = -1;
  EXPECT_FALSE(sr.well_formed());
  TenantAccount t{0, {}, {1000, 200, 3}, {}};
  SliceRequest ok;
  ok.rho = 1.5;
  ok.eta = 2.5;
  ok.gamma = 10;
  EXPECT_EQ(request_amounts(t, ok), (SliceVector{15, 5, 0}));
}

TEST(Transfer, MovesAllThreeTypes) {
  Fixture f;
  const auto out = simulate_transfer(f.state, f.dir, acquire(5));
  ASSERT_TRUE(std::holds_alternative<ContractEffect>(out));
  const auto& e = std::get<ContractEffect>(out);
  EXPECT_EQ(e.read_set.size(), 6u);
  ASSERT_EQ(e.write_set.size(), 6u);
  EXPECT_EQ(e.write_set[0], (ledger::WriteEntry{{1, kRadio}, 950}));
  EXPECT_EQ(e.write_set[1], (ledger::WriteEntry{{0, kRadio}, 1050}));
}

TEST(Transfer, CollisionWhenGiverLacksSurplus) {
  Fixture f;
  const auto out = simulate_transfer(f.state, f.dir, acquire(11));
  ASSERT_TRUE(std::holds_alternative<Collision>(out));
  EXPECT_EQ(std::get<Collision>(out).reason, CollisionReason::kInsufficientAvailability);
}

TEST(Transfer, CollisionWhenReceiverNeedsLess) {
  Fixture f;
  // Registry has 500 available, but tenant 0 only needs 100.
  const auto out = simulate_transfer(f.state, f.dir, acquire(20, ledger::kRegistryOwner));
  ASSERT_TRUE(std::holds_alternative<Collision>(out));
  EXPECT_EQ(std::get<Collision>(out).reason, CollisionReason::kNoRemainingNeed);
}

TEST(Transfer, ReleaseToRegistry) {
  Fixture f;
  SliceRequest sr;
  sr.requester = 1;
  sr.counterparty = ledger::kRegistryOwner;
  sr.direction = Direction::kRelease;
  sr.rho = 10;
  const auto out = simulate_transfer(f.state, f.dir, sr);
  ASSERT_TRUE(std::holds_alternative<ContractEffect>(out));
  EXPECT_EQ(std::get<ContractEffect>(out).write_set.size(), 2u);
}

TEST(Transfer, RejectsBadInput) {
  Fixture f;
  SliceRequest open = acquire(1);
  open.counterparty.reset();
  EXPECT_THROW(simulate_transfer(f.state, f.dir, open), std::invalid_argument);
  EXPECT_THROW(simulate_transfer(f.state, f.dir, acquire(1, 9)), UnknownTenant);
}

TEST(Transfer, PayloadRoundTrip) {
  TransferArgs a{3, ledger::kRegistryOwner, Direction::kRelease, {1, 2, 3}};
  EXPECT_EQ(decode_transfer(encode_transfer(a)), a);
  ledger::Payload wrong{"other", {}};
  EXPECT_THROW(decode_transfer(wrong), std::invalid_argument);
}

TEST(Auction, HighestBidWins) {
  AuctionSpec s{from_ms(100), 1, {10, 10, 10}, {{2, 5.0, 10}, {3, 7.0, 20}, {4, 6.0, 5}}};
  EXPECT_EQ(select_auction_winner(s), 3u);
}

TEST(Auction, TieBreaksByArrivalThenPeer) {
  AuctionSpec s{from_ms(100), 1, {10, 10, 10}, {{5, 7.0, 30}, {3, 7.0, 20}, {2, 7.0, 20}}};
  EXPECT_EQ(select_auction_winner(s), 2u);
}

TEST(Auction, LateBidsIgnored) {
  AuctionSpec s{from_ms(100), 1, {10, 10, 10}, {{2, 9.0, from_ms(101)}, {3, 1.0, from_ms(100)}}};
  EXPECT_EQ(select_auction_winner(s), 3u);
  s.bids.pop_back();
  EXPECT_FALSE(select_auction_winner(s).has_value());
  AuctionBook book(from_ms(100), 1, {1, 1, 1});
  EXPECT_TRUE(book.place_bid({2, 1.0, from_ms(100)}));
  EXPECT_FALSE(book.place_bid({2, 1.0, from_ms(100) + 1}));
}

TEST(Auction, EffectMovesResourceSet) {
  Fixture f;
  AuctionSpec s{from_ms(100), 1, {10, 20, 30}, {{0, 3.0, 1}}};
  const AuctionResult r = run_auction(s, f.state);
  ASSERT_EQ(r.winner, 0u);
  EXPECT_EQ(r.effect.write_set.size(), 6u);
  s.resource_set = {5000, 0, 0};
  EXPECT_THROW(run_auction(s, f.state), std::invalid_argument);
}

TEST(Registry, GenesisAndOpening) {
  EXPECT_THROW(init_registry({}), std::invalid_argument);
  EXPECT_THROW(init_registry({5, 0}), std::invalid_argument);
  const KeyPair k = KeyPair::from_seed(derive_key_seed(1, "ib"));
  ledger::Ledger ledger;
  ledger.bootstrap(make_genesis(k, "ib0", {300, 300, 300}));
  EXPECT_EQ(ledger.state().capacity(), (std::vector<std::int64_t>{300, 300, 300}));

  std::map<TenantId, SliceVector> alloc{{0, {100, 100, 100}}, {1, {100, 100, 100}}};
  const ContractEffect e = opening_effect(ledger.state(), alloc);
  ledger::Transaction tx;
  tx.tx_id = "ib0/opening";
  tx.sender = k.public_id();
  tx.payload = encode_opening(alloc);
  tx.read_set = e.read_set;
  tx.write_set = e.write_set;
  const auto& block = ledger.commit({ledger::sign_transaction(tx, k)}, 1);
  EXPECT_EQ(block.validity[0], ledger::TxValidity::kCommitted);
  EXPECT_EQ(ledger.state().value({ledger::kRegistryOwner, 0}), 100);
  EXPECT_EQ(ledger.state().value({1, 2}), 100);
  EXPECT_TRUE(ledger.state().check_conservation());

  alloc[2] = {200, 0, 0};
  EXPECT_THROW(opening_effect(ledger.state(), alloc), std::invalid_argument);
}
