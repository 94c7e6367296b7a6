#include <gtest/gtest.h>

#include <sstream>

#include "nsb/common/codec.h"
#include "nsb/common/crypto.h"
#include "nsb/common/rng.h"
#include "nsb/contracts/registry.h"
#include "nsb/ledger/chain.h"
#include "nsb/ledger/chain_dump.h"
#include "nsb/ledger/validator.h"
#include "../support/oracles.h"

using namespace nsb;
using namespace nsb::ledger;

namespace {

KeyPair test_key(const std::string& label) { return KeyPair::from_seed(derive_key_seed(7, label)); }

Transaction signed_move(const KeyPair& key, const std::string& id, const WorldState& snap,
                        StateKey from, StateKey to, std::int64_t amount) {
  Transaction tx;
  tx.tx_id = id;
  tx.sender = key.public_id();
  tx.channel = "c";
  tx.read_set = {{from, snap.version(from)}, {to, snap.version(to)}};
  tx.write_set = {{from, snap.value(from) - amount}, {to, snap.value(to) + amount}};
  return sign_transaction(tx, key);
}

Ledger two_holder_ledger(const KeyPair& key) {
  Transaction g;
  g.tx_id = "g";
  g.sender = key.public_id();
  g.channel = "c";
  g.write_set = {{{0, 0}, 100}, {{1, 0}, 100}};
  Block genesis;
  genesis.transactions.push_back(sign_transaction(g, key));
  Ledger ledger;
  ledger.bootstrap(genesis);
  return ledger;
}

}  // namespace

TEST(Sha256, KnownVector) {
  const std::string abc = "abc";
  const Digest d = sha256({reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()});
  EXPECT_EQ(to_hex(d), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Codec, RoundTrip) {
  Encoder enc;
  enc.put_u8(7);
  enc.put_u32(0xdeadbeef);
  enc.put_i64(-5);
  enc.put_f64(0.25);
  enc.put_string("slice");
  Decoder dec(enc.bytes());
  EXPECT_EQ(dec.get_u8(), 7);
  EXPECT_EQ(dec.get_u32(), 0xdeadbeefu);
  EXPECT_EQ(dec.get_i64(), -5);
  EXPECT_EQ(dec.get_f64(), 0.25);
  EXPECT_EQ(dec.get_string(), "slice");
  EXPECT_TRUE(dec.done());
  EXPECT_THROW(dec.get_u8(), DecodeError);
  EXPECT_THROW(from_hex("abc"), DecodeError);
  EXPECT_THROW(from_hex("zz"), DecodeError);
}

TEST(Signature, DeterministicAndTamperEvident) {
  const KeyPair k = test_key("a");
  Transaction tx;
  tx.tx_id = "x";
  tx.sender = k.public_id();
  const Transaction s1 = sign_transaction(tx, k);
  const Transaction s2 = sign_transaction(tx, k);
  EXPECT_EQ(s1.signature, s2.signature);
  EXPECT_TRUE(verify_signature(s1));
  Transaction bad = s1;
  bad.tx_id = "y";
  EXPECT_FALSE(verify_signature(bad));
  tx.sender = test_key("b").public_id();
  EXPECT_THROW(sign_transaction(tx, k), std::invalid_argument);
}

TEST(Block, EncodeDecodeRoundTrip) {
  const KeyPair k = test_key("a");
  Ledger ledger = two_holder_ledger(k);
  ledger.commit({signed_move(k, "t1", ledger.state(), {0, 0}, {1, 0}, 10)}, 5);
  for (const Block& b : ledger.chain()) {
    const Block back = decode_block(encode_block(b));
    EXPECT_EQ(back.hash, b.hash);
    EXPECT_EQ(hash_block(back), b.hash);
    EXPECT_EQ(back.transactions, b.transactions);
    EXPECT_EQ(back.validity, b.validity);
  }
}

TEST(Ledger, SecondGenesisRejected) {
  const KeyPair k = test_key("a");
  Ledger ledger = two_holder_ledger(k);
  EXPECT_THROW(ledger.bootstrap(Block{}), AlreadyBootstrapped);
}

TEST(Ledger, StaleReadInSameBlockConflicts) {
  const KeyPair k = test_key("a");
  Ledger ledger = two_holder_ledger(k);
  const WorldState snap = ledger.state();
  const Block& b = ledger.commit({signed_move(k, "t1", snap, {0, 0}, {1, 0}, 10),
                                  signed_move(k, "t2", snap, {0, 0}, {1, 0}, 20)},
                                 1);
  ASSERT_EQ(b.validity.size(), 2u);
  EXPECT_EQ(b.validity[0], TxValidity::kCommitted);
  EXPECT_EQ(b.validity[1], TxValidity::kRwConflict);
  EXPECT_EQ(ledger.state().value({0, 0}), 90);
  EXPECT_EQ(ledger.state().version({0, 0}), (Version{1, 0}));
  EXPECT_TRUE(ledger.state().check_conservation());
}

TEST(Ledger, NonConservingWriteIsCollision) {
  const KeyPair k = test_key("a");
  Ledger ledger = two_holder_ledger(k);
  Transaction tx = signed_move(k, "t1", ledger.state(), {0, 0}, {1, 0}, 10);
  tx.write_set[1].value += 1;
  tx = sign_transaction(tx, k);
  const Block& b = ledger.commit({tx}, 1);
  EXPECT_EQ(b.validity[0], TxValidity::kSrCollision);
  EXPECT_EQ(ledger.state().value({0, 0}), 100);
}

TEST(Ledger, BadSignatureFlagged) {
  const KeyPair k = test_key("a");
  Ledger ledger = two_holder_ledger(k);
  Transaction tx = signed_move(k, "t1", ledger.state(), {0, 0}, {1, 0}, 10);
  tx.signature[3] ^= 0x40;
  EXPECT_EQ(ledger.commit({tx}, 1).validity[0], TxValidity::kBadSignature);
}

TEST(Ledger, PreFlagsSurvive) {
  const KeyPair k = test_key("a");
  Ledger ledger = two_holder_ledger(k);
  const Block& b = ledger.commit({signed_move(k, "t1", ledger.state(), {0, 0}, {1, 0}, 10)}, 1,
                                 {TxValidity::kSrCollision});
  EXPECT_EQ(b.validity[0], TxValidity::kSrCollision);
  EXPECT_EQ(ledger.state().value({1, 0}), 100);
}

TEST(Ledger, HashChainVerifiesAndDetectsTampering) {
  const KeyPair k = test_key("a");
  Ledger ledger = two_holder_ledger(k);
  for (int i = 0; i < 4; ++i) {
    ledger.commit({signed_move(k, "t" + std::to_string(i), ledger.state(), {0, 0}, {1, 0}, 1)}, i);
  }
  std::vector<Block> chain = ledger.chain();
  EXPECT_TRUE(verify_chain(chain));
  EXPECT_FALSE(first_invalid_block(chain).has_value());
  chain[2].transactions[0].write_set[0].value = 0;
  EXPECT_FALSE(verify_chain(chain));
  EXPECT_EQ(first_invalid_block(chain), 2u);
}

TEST(Validator, HeightMismatchThrows) {
  WorldState state;
  Block b;
  b.height = 1;
  EXPECT_THROW(validate_and_commit(state, b), HeightMismatch);
}

TEST(Mvcc, MatchesSequentialOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto stream = oracle::make_mvcc_stream(seed, 200, 30);
    const auto cmp = oracle::compare_mvcc(stream);
    EXPECT_TRUE(cmp.flags_match) << "seed " << seed << ": " << cmp.first_mismatch;
    EXPECT_TRUE(cmp.state_match) << "seed " << seed;
  }
}

TEST(ChainDump, RoundTripReplayAndTamper) {
  const KeyPair k = test_key("ib");
  Ledger ledger;
  ledger.bootstrap(contracts::make_genesis(k, "ib0", {1000, 1000, 1000}));
  std::ostringstream out;
  write_chain_dump(out, ledger.chain());
  {
    std::istringstream in(out.str());
    const DumpCheck ok = check_chain_dump(in);
    EXPECT_TRUE(ok.ok()) << ok.message;
    EXPECT_EQ(ok.final_totals, (std::vector<std::int64_t>{1000, 1000, 1000}));
  }
  {
    std::istringstream in("");
    EXPECT_EQ(check_chain_dump(in).status, DumpStatus::kEmpty);
  }
  {
    std::string text = out.str();
    const auto pos = text.find("\"raw\":\"") + 12;
    text[pos] = text[pos] == '0' ? '1' : '0';
    std::istringstream in(text);
    EXPECT_FALSE(check_chain_dump(in).ok());
  }
}

TEST(ChainDump, ReplayDetectsWrongFlag) {
  const KeyPair k = test_key("a");
  Ledger ledger = two_holder_ledger(k);
  const WorldState snap = ledger.state();
  ledger.commit({signed_move(k, "t1", snap, {0, 0}, {1, 0}, 10),
                 signed_move(k, "t2", snap, {0, 0}, {1, 0}, 20)},
                1);
  std::vector<Block> chain = ledger.chain();
  EXPECT_TRUE(replay_chain(chain).ok());
  chain[1].validity[1] = TxValidity::kCommitted;
  chain[1].hash = hash_block(chain[1]);
  const DumpCheck bad = replay_chain(chain);
  EXPECT_EQ(bad.status, DumpStatus::kBadReplay);
  EXPECT_EQ(bad.failing_height, 1u);
}
