#include "qcluster/bitstring.hpp"

#include <stdexcept>

namespace qcluster {

namespace {

void check_width(std::size_t n) {
  if (n > 63) throw std::out_of_range("bitstring wider than 63 bits cannot be encoded as an integer");
}

}  // namespace

Bitstring::Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("bitstring entries must be 0 or 1");
  }
}

Bitstring Bitstring::zeros(std::size_t n) { return Bitstring(std::vector<std::uint8_t>(n, 0)); }

Bitstring Bitstring::from_basis_index(std::uint64_t index, std::size_t n) {
  check_width(n);
  if (n < 64 && (index >> n) != 0) throw std::out_of_range("basis index exceeds 2^n");
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((index >> i) & 1u);
  return Bitstring(std::move(bits));
}

Bitstring Bitstring::from_binary_value(std::uint64_t value, std::size_t n) {
  check_width(n);
  if (n < 64 && (value >> n) != 0) throw std::out_of_range("binary value exceeds 2^n");
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((value >> (n - 1 - i)) & 1u);
  return Bitstring(std::move(bits));
}

Bitstring Bitstring::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring text must contain only '0' and '1'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Bitstring(std::move(bits));
}

std::uint64_t Bitstring::basis_index() const {
  check_width(size());
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < size(); ++i) index |= static_cast<std::uint64_t>(bits_[i]) << i;
  return index;
}

std::uint64_t Bitstring::binary_value() const {
  check_width(size());
  std::uint64_t value = 0;
  for (auto b : bits_) value = (value << 1) | b;
  return value;
}

std::string Bitstring::to_string() const {
  std::string out(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) out[i] = static_cast<char>('0' + bits_[i]);
  return out;
}

Bitstring Bitstring::complement() const {
  std::vector<std::uint8_t> flipped(bits_);
  for (auto& b : flipped) b ^= 1u;
  return Bitstring(std::move(flipped));
}

Bitstring Bitstring::canonical() const {
  if (!bits_.empty() && bits_[0] == 1) return complement();
  return *this;
}

}  // namespace qcluster
