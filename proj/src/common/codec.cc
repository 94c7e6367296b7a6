#include "nsb/common/codec.h"

#include <bit>
#include <cstring>

namespace nsb {

void Encoder::put_u8(std::uint8_t v) { out_.push_back(v); }

void Encoder::put_u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void Encoder::put_u64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void Encoder::put_f64(double v) { put_u64(std::bit_cast<std::uint64_t>(v)); }

void Encoder::put_bytes(std::span<const std::uint8_t> v) {
  put_u32(static_cast<std::uint32_t>(v.size()));
  put_raw(v);
}

void Encoder::put_raw(std::span<const std::uint8_t> v) {
  out_.insert(out_.end(), v.begin(), v.end());
}

void Encoder::put_string(std::string_view v) {
  put_bytes({reinterpret_cast<const std::uint8_t*>(v.data()), v.size()});
}

void Decoder::need(std::size_t n) const {
  if (in_.size() - pos_ < n) {
    throw DecodeError("truncated input: need " + std::to_string(n) +
                      " bytes at offset " + std::to_string(pos_));
  }
}

std::uint8_t Decoder::get_u8() {
  need(1);
  return in_[pos_++];
}

std::uint32_t Decoder::get_u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_++];
  return v;
}

std::uint64_t Decoder::get_u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | in_[pos_++];
  return v;
}

double Decoder::get_f64() { return std::bit_cast<double>(get_u64()); }

Bytes Decoder::get_bytes() {
  const std::uint32_t n = get_u32();
  need(n);
  Bytes out(in_.begin() + static_cast<std::ptrdiff_t>(pos_),
            in_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
  pos_ += n;
  return out;
}

void Decoder::get_raw(std::span<std::uint8_t> out) {
  need(out.size());
  std::memcpy(out.data(), in_.data() + pos_, out.size());
  pos_ += out.size();
}

std::string Decoder::get_string() {
  Bytes b = get_bytes();
  return std::string(b.begin(), b.end());
}

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DecodeError("odd-length hex string");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_value(hex[i]);
    const int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw DecodeError("invalid hex digit");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

}  // namespace nsb
