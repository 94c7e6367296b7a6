#include "nsb/ledger/chain_dump.h"

#include <istream>
#include <ostream>

#include "json.hpp"
#include "nsb/ledger/chain.h"
#include "nsb/ledger/validator.h"
#include "nsb/ledger/world_state.h"

namespace nsb::ledger {

using nlohmann::json;

void write_chain_dump(std::ostream& out, std::span<const Block> chain) {
  for (const Block& b : chain) {
    const Bytes raw = encode_block(b);
    json rec;
    rec["height"] = b.height;
    rec["hash"] = to_hex(b.hash);
    rec["prev_hash"] = to_hex(b.prev_hash);
    rec["bytes"] = raw.size();
    json txs = json::array();
    for (std::size_t i = 0; i < b.transactions.size(); ++i) {
      txs.push_back({{"id", b.transactions[i].tx_id},
                     {"flag", std::string(to_string(b.validity[i]))}});
    }
    rec["txs"] = std::move(txs);
    rec["raw"] = to_hex(raw);
    out << rec.dump() << '\n';
  }
}

namespace {

DumpCheck fail(DumpStatus status, std::uint64_t height, std::string message) {
  DumpCheck c;
  c.status = status;
  c.failing_height = height;
  c.message = std::move(message);
  return c;
}

// Decodes one record and checks that the readable fields match the raw block.
std::optional<Block> parse_record(const std::string& line, std::uint64_t expected,
                                  std::string& error) {
  try {
    const json rec = json::parse(line);
    Block b = decode_block(from_hex(rec.at("raw").get<std::string>()));
    if (rec.at("height").get<std::uint64_t>() != b.height || b.height != expected) {
      error = "height field disagrees";
      return std::nullopt;
    }
    if (rec.at("hash").get<std::string>() != to_hex(b.hash) ||
        rec.at("prev_hash").get<std::string>() != to_hex(b.prev_hash)) {
      error = "hash fields disagree with raw block";
      return std::nullopt;
    }
    const json& txs = rec.at("txs");
    if (txs.size() != b.transactions.size() || b.validity.size() != b.transactions.size()) {
      error = "transaction list disagrees with raw block";
      return std::nullopt;
    }
    for (std::size_t i = 0; i < txs.size(); ++i) {
      if (txs[i].at("id").get<std::string>() != b.transactions[i].tx_id ||
          txs[i].at("flag").get<std::string>() != to_string(b.validity[i])) {
        error = "transaction entry disagrees with raw block";
        return std::nullopt;
      }
    }
    return b;
  } catch (const std::exception& e) {
    error = e.what();
    return std::nullopt;
  }
}

}  // namespace

DumpCheck replay_chain(std::span<const Block> chain) {
  if (chain.empty()) return fail(DumpStatus::kEmpty, 0, "no blocks");
  WorldState state;
  try {
    apply_genesis(state, chain.front());
  } catch (const std::exception& e) {
    return fail(DumpStatus::kBadReplay, 0, e.what());
  }
  if (!state.check_conservation()) {
    return fail(DumpStatus::kConservation, 0, "genesis state inconsistent");
  }
  for (std::size_t h = 1; h < chain.size(); ++h) {
    Block copy = chain[h];
    for (TxValidity& f : copy.validity) {
      if (f != TxValidity::kSrCollision) f = TxValidity::kCommitted;
    }
    try {
      validate_and_commit(state, copy);
    } catch (const std::exception& e) {
      return fail(DumpStatus::kBadReplay, h, e.what());
    }
    if (copy.validity != chain[h].validity) {
      return fail(DumpStatus::kBadReplay, h, "recorded validity flags do not replay");
    }
    if (!state.check_conservation()) {
      return fail(DumpStatus::kConservation, h, "conservation violated");
    }
  }
  DumpCheck ok;
  ok.final_totals = state.totals_per_type();
  return ok;
}

DumpCheck check_chain_dump(std::istream& in) {
  std::vector<Block> chain;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string error;
    const std::uint64_t height = chain.size();
    std::optional<Block> b = parse_record(line, height, error);
    if (!b) return fail(DumpStatus::kCorrupt, height, error);
    chain.push_back(std::move(*b));
  }
  if (chain.empty()) {
    DumpCheck c;
    c.status = DumpStatus::kEmpty;
    c.message = "dump contains no blocks";
    return c;
  }
  if (auto bad = first_invalid_block(chain)) {
    return fail(DumpStatus::kBadChain, *bad, "hash chain broken");
  }
  return replay_chain(chain);
}

}  // namespace nsb::ledger
