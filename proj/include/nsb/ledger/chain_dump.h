#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsb/ledger/types.h"

namespace nsb::ledger {

// Newline-delimited JSON, one block per line:
//   {"height":H,"hash":"<hex>","prev_hash":"<hex>","bytes":N,
//    "txs":[{"id":"...","flag":"COMMITTED"},...],"raw":"<hex>"}
// `raw` is the canonical block serialization; the other fields are a
// readable index over it and are cross-checked on load.
void write_chain_dump(std::ostream& out, std::span<const Block> chain);

enum class DumpStatus {
  kOk,
  kEmpty,       // no records at all
  kCorrupt,     // a record fails to parse or disagrees with its raw bytes
  kBadChain,    // hash links or heights broken
  kBadReplay,   // re-validation disagrees with recorded flags
  kConservation,
};

struct DumpCheck {
  DumpStatus status = DumpStatus::kOk;
  std::optional<std::uint64_t> failing_height;
  std::string message;
  std::vector<std::int64_t> final_totals;

  bool ok() const { return status == DumpStatus::kOk; }
};

// Parses a dump, verifies the hash chain, replays MVCC validation from
// genesis, and checks conservation after every block.
DumpCheck check_chain_dump(std::istream& in);

// Replays blocks from genesis against a fresh state and checks that each
// recomputed validity vector equals the recorded one.
DumpCheck replay_chain(std::span<const Block> chain);

}  // namespace nsb::ledger
