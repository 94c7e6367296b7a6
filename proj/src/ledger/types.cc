#include "nsb/ledger/types.h"

#include <stdexcept>

namespace nsb::ledger {

std::string to_string(const StateKey& key) {
  const std::string owner =
      key.is_registry() ? std::string("registry") : std::to_string(key.owner);
  return owner + "/" + std::to_string(key.resource);
}

namespace {

void encode_key(Encoder& enc, const StateKey& key) {
  enc.put_u32(key.owner);
  enc.put_u32(key.resource);
}

StateKey decode_key(Decoder& dec) {
  StateKey key;
  key.owner = dec.get_u32();
  key.resource = dec.get_u32();
  return key;
}

void encode_unsigned_fields(Encoder& enc, const Transaction& tx) {
  enc.put_string(tx.tx_id);
  enc.put_raw(tx.sender);
  enc.put_string(tx.channel);
  enc.put_string(tx.payload.contract);
  enc.put_bytes(tx.payload.args);
  enc.put_u32(static_cast<std::uint32_t>(tx.read_set.size()));
  for (const ReadEntry& r : tx.read_set) {
    encode_key(enc, r.key);
    enc.put_u64(r.version.block_height);
    enc.put_u32(r.version.tx_index);
  }
  enc.put_u32(static_cast<std::uint32_t>(tx.write_set.size()));
  for (const WriteEntry& w : tx.write_set) {
    encode_key(enc, w.key);
    enc.put_i64(w.value);
  }
  enc.put_i64(tx.submit_time);
}

}  // namespace

Bytes signing_bytes(const Transaction& tx) {
  Encoder enc;
  encode_unsigned_fields(enc, tx);
  return enc.take();
}

void encode_transaction(Encoder& enc, const Transaction& tx) {
  encode_unsigned_fields(enc, tx);
  enc.put_raw(tx.signature);
}

Transaction decode_transaction(Decoder& dec) {
  Transaction tx;
  tx.tx_id = dec.get_string();
  dec.get_raw(tx.sender);
  tx.channel = dec.get_string();
  tx.payload.contract = dec.get_string();
  tx.payload.args = dec.get_bytes();
  const std::uint32_t reads = dec.get_u32();
  if (reads > dec.remaining()) throw DecodeError("read_set length too large");
  tx.read_set.reserve(reads);
  for (std::uint32_t i = 0; i < reads; ++i) {
    ReadEntry r;
    r.key = decode_key(dec);
    r.version.block_height = dec.get_u64();
    r.version.tx_index = dec.get_u32();
    tx.read_set.push_back(r);
  }
  const std::uint32_t writes = dec.get_u32();
  if (writes > dec.remaining()) throw DecodeError("write_set length too large");
  tx.write_set.reserve(writes);
  for (std::uint32_t i = 0; i < writes; ++i) {
    WriteEntry w;
    w.key = decode_key(dec);
    w.value = dec.get_i64();
    tx.write_set.push_back(w);
  }
  tx.submit_time = dec.get_i64();
  dec.get_raw(tx.signature);
  return tx;
}

Transaction sign_transaction(Transaction tx, const KeyPair& key) {
  if (tx.sender != key.public_id()) {
    throw std::invalid_argument("transaction sender does not match signing key");
  }
  tx.signature = key.sign(signing_bytes(tx));
  return tx;
}

bool verify_signature(const Transaction& tx) {
  return nsb::verify_signature(tx.sender, signing_bytes(tx), tx.signature);
}

std::string_view to_string(TxValidity v) {
  switch (v) {
    case TxValidity::kCommitted:
      return "COMMITTED";
    case TxValidity::kRwConflict:
      return "RW_CONFLICT";
    case TxValidity::kSrCollision:
      return "SR_COLLISION";
    case TxValidity::kBadSignature:
      return "BAD_SIGNATURE";
  }
  return "UNKNOWN";
}

std::optional<TxValidity> validity_from_string(std::string_view s) {
  for (TxValidity v : {TxValidity::kCommitted, TxValidity::kRwConflict,
                       TxValidity::kSrCollision, TxValidity::kBadSignature}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

Bytes block_body_bytes(const Block& block) {
  Encoder enc;
  enc.put_u64(block.height);
  enc.put_raw(block.prev_hash);
  enc.put_u32(static_cast<std::uint32_t>(block.transactions.size()));
  for (const Transaction& tx : block.transactions) {
    Encoder tx_enc;
    encode_transaction(tx_enc, tx);
    enc.put_bytes(tx_enc.bytes());
  }
  enc.put_u32(static_cast<std::uint32_t>(block.validity.size()));
  for (TxValidity v : block.validity) enc.put_u8(static_cast<std::uint8_t>(v));
  enc.put_i64(block.cut_time);
  return enc.take();
}

Bytes encode_block(const Block& block) {
  Bytes out = block_body_bytes(block);
  out.insert(out.end(), block.hash.begin(), block.hash.end());
  return out;
}

Block decode_block(std::span<const std::uint8_t> bytes) {
  Decoder dec(bytes);
  Block block;
  block.height = dec.get_u64();
  dec.get_raw(block.prev_hash);
  const std::uint32_t n = dec.get_u32();
  if (n > dec.remaining()) throw DecodeError("transaction count too large");
  block.transactions.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Bytes raw = dec.get_bytes();
    Decoder tx_dec(raw);
    block.transactions.push_back(decode_transaction(tx_dec));
    if (!tx_dec.done()) throw DecodeError("trailing bytes in transaction");
  }
  const std::uint32_t flags = dec.get_u32();
  if (flags > dec.remaining()) throw DecodeError("validity count too large");
  for (std::uint32_t i = 0; i < flags; ++i) {
    const std::uint8_t raw = dec.get_u8();
    if (raw > static_cast<std::uint8_t>(TxValidity::kBadSignature)) {
      throw DecodeError("unknown validity flag");
    }
    block.validity.push_back(static_cast<TxValidity>(raw));
  }
  block.cut_time = dec.get_i64();
  dec.get_raw(block.hash);
  if (!dec.done()) throw DecodeError("trailing bytes after block");
  return block;
}

Digest hash_block(const Block& block) { return sha256(block_body_bytes(block)); }

}  // namespace nsb::ledger
