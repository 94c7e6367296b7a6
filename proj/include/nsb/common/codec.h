#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsb {

using Bytes = std::vector<std::uint8_t>;

// Canonical binary encoding used for hashing, signing and size accounting.
// Integers are fixed-width big-endian; variable-length fields carry a u32
// length prefix. Field order is the declaration order of the encoded struct.
class Encoder {
 public:
  void put_u8(std::uint8_t v);
  void put_u32(std::uint32_t v);
  void put_u64(std::uint64_t v);
  void put_i64(std::int64_t v) { put_u64(static_cast<std::uint64_t>(v)); }
  void put_f64(double v);
  void put_bytes(std::span<const std::uint8_t> v);  // length-prefixed
  void put_raw(std::span<const std::uint8_t> v);    // fixed width, no prefix
  void put_string(std::string_view v);

  const Bytes& bytes() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Decoder {
 public:
  explicit Decoder(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t get_u8();
  std::uint32_t get_u32();
  std::uint64_t get_u64();
  std::int64_t get_i64() { return static_cast<std::int64_t>(get_u64()); }
  double get_f64();
  Bytes get_bytes();
  void get_raw(std::span<std::uint8_t> out);
  std::string get_string();

  bool done() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const;

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> data);
// Throws DecodeError on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

}  // namespace nsb
