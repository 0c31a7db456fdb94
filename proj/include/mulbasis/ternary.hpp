#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mulbasis {

// Element of GF(3)^n. Coordinates are bit-sliced into two planes (bit i of
// `ones` set means coordinate i is 1, bit i of `twos` means it is 2), so sums
// and weights run a word at a time.
class TernaryVector {
 public:
  TernaryVector() = default;
  explicit TernaryVector(std::size_t n);

  static TernaryVector from_coords(std::span<const std::uint8_t> coords);
  // Digits '0', '1', '2', coordinate 0 first.
  static TernaryVector parse(std::string_view digits);
  static TernaryVector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return n_; }
  std::uint8_t operator[](std::size_t i) const;
  void set(std::size_t i, std::uint8_t value);

  std::size_t weight() const;
  std::size_t count_ones() const;
  std::size_t count_twos() const;
  bool is_zero() const;
  std::vector<std::size_t> support() const;

  TernaryVector operator+(const TernaryVector& other) const;
  TernaryVector operator-(const TernaryVector& other) const;
  TernaryVector operator-() const;
  TernaryVector scaled(std::uint8_t c) const;
  TernaryVector& operator+=(const TernaryVector& other);

  // Coordinates [begin, end) as a vector of dimension end - begin.
  TernaryVector slice(std::size_t begin, std::size_t end) const;

  std::string str() const;
  std::size_t hash() const;

  friend bool operator==(const TernaryVector& a, const TernaryVector& b) = default;
  // Lexicographic, coordinate 0 most significant, 0 < 1 < 2.
  friend std::strong_ordering operator<=>(const TernaryVector& a, const TernaryVector& b);

 private:
  std::size_t words() const { return (n_ + 63) / 64; }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> ones_;
  std::vector<std::uint64_t> twos_;
};

struct TernaryVectorHash {
  std::size_t operator()(const TernaryVector& v) const { return v.hash(); }
};

// Rank over GF(3) of equal-dimension vectors.
std::size_t rank_mod3(std::span<const TernaryVector> vectors);

}  // namespace mulbasis
