#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcluster {

/// Cluster assignment over n vertices, bit i for vertex i.
///
/// Two integer encodings exist and both go through this class:
///   - basis_index(): little-endian, bit i of the index is vertex/qubit i.
///     This is the statevector ordering.
///   - binary_value(): vertex 0 is the most significant bit. This is the
///     order used for every "lowest binary value wins" tie rule, and it
///     coincides with lexicographic order of to_string().
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::vector<std::uint8_t> bits);

  static Bitstring zeros(std::size_t n);
  static Bitstring from_basis_index(std::uint64_t index, std::size_t n);
  static Bitstring from_binary_value(std::uint64_t value, std::size_t n);
  // Text form lists vertex 0 first, e.g. "01" means x0 = 0, x1 = 1.
  static Bitstring parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::uint64_t basis_index() const;
  std::uint64_t binary_value() const;
  std::string to_string() const;

  Bitstring complement() const;
  // Flip all bits if needed so that vertex 0 sits in cluster 0.
  Bitstring canonical() const;

  // Equal-length comparison orders by binary_value().
  auto operator<=>(const Bitstring&) const = default;
  bool operator==(const Bitstring&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace qcluster
