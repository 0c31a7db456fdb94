#include "mulbasis/ternary.hpp"

#include <bit>

#include "mulbasis/error.hpp"
#include "mulbasis/numtheory.hpp"

namespace mulbasis {

TernaryVector::TernaryVector(std::size_t n) : n_(n), ones_(words(), 0), twos_(words(), 0) {}

TernaryVector TernaryVector::from_coords(std::span<const std::uint8_t> coords) {
  TernaryVector v(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) v.set(i, coords[i]);
  return v;
}

TernaryVector TernaryVector::parse(std::string_view digits) {
  TernaryVector v(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char c = digits[i];
    if (c < '0' || c > '2') throw ArgumentError("ternary digit expected, got '" + std::string(1, c) + "'");
    v.set(i, static_cast<std::uint8_t>(c - '0'));
  }
  return v;
}

TernaryVector TernaryVector::unit(std::size_t n, std::size_t i) {
  TernaryVector v(n);
  v.set(i, 1);
  return v;
}

std::uint8_t TernaryVector::operator[](std::size_t i) const {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (ones_[i / 64] & bit) return 1;
  if (twos_[i / 64] & bit) return 2;
  return 0;
}

void TernaryVector::set(std::size_t i, std::uint8_t value) {
  if (i >= n_) throw ArgumentError("coordinate index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  ones_[i / 64] &= ~bit;
  twos_[i / 64] &= ~bit;
  switch (value % 3) {
    case 1: ones_[i / 64] |= bit; break;
    case 2: twos_[i / 64] |= bit; break;
    default: break;
  }
}

std::size_t TernaryVector::weight() const {
  std::size_t w = 0;
  for (std::size_t k = 0; k < words(); ++k) w += std::popcount(ones_[k] | twos_[k]);
  return w;
}

std::size_t TernaryVector::count_ones() const {
  std::size_t w = 0;
  for (auto x : ones_) w += std::popcount(x);
  return w;
}

std::size_t TernaryVector::count_twos() const {
  std::size_t w = 0;
  for (auto x : twos_) w += std::popcount(x);
  return w;
}

bool TernaryVector::is_zero() const {
  for (std::size_t k = 0; k < words(); ++k)
    if (ones_[k] | twos_[k]) return false;
  return true;
}

std::vector<std::size_t> TernaryVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < words(); ++k) {
    std::uint64_t m = ones_[k] | twos_[k];
    while (m) {
      out.push_back(k * 64 + std::countr_zero(m));
      m &= m - 1;
    }
  }
  return out;
}

TernaryVector& TernaryVector::operator+=(const TernaryVector& other) {
  if (other.n_ != n_) throw ArgumentError("dimension mismatch in ternary addition");
  for (std::size_t k = 0; k < words(); ++k) {
    const std::uint64_t a1 = ones_[k], a2 = twos_[k];
    const std::uint64_t b1 = other.ones_[k], b2 = other.twos_[k];
    const std::uint64_t a0 = ~(a1 | a2), b0 = ~(b1 | b2);
    ones_[k] = (a0 & b1) | (a1 & b0) | (a2 & b2);
    twos_[k] = (a0 & b2) | (a2 & b0) | (a1 & b1);
  }
  return *this;
}

TernaryVector TernaryVector::operator+(const TernaryVector& other) const {
  TernaryVector out = *this;
  out += other;
  return out;
}

TernaryVector TernaryVector::operator-() const {
  TernaryVector out = *this;
  std::swap(out.ones_, out.twos_);
  return out;
}

TernaryVector TernaryVector::operator-(const TernaryVector& other) const { return *this + (-other); }

TernaryVector TernaryVector::scaled(std::uint8_t c) const {
  switch (c % 3) {
    case 0: return TernaryVector(n_);
    case 1: return *this;
    default: return -*this;
  }
}

TernaryVector TernaryVector::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > n_) throw ArgumentError("slice out of range");
  TernaryVector out(end - begin);
  for (std::size_t i = begin; i < end; ++i)
    if (auto c = (*this)[i]) out.set(i - begin, c);
  return out;
}

std::string TernaryVector::str() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) s[i] = static_cast<char>('0' + (*this)[i]);
  return s;
}

std::size_t TernaryVector::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
  for (std::size_t k = 0; k < words(); ++k) {
    h ^= ones_[k] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= twos_[k] * 0xff51afd7ed558ccdull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const TernaryVector& a, const TernaryVector& b) {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  for (std::size_t k = 0; k < a.words(); ++k) {
    const std::uint64_t diff = (a.ones_[k] ^ b.ones_[k]) | (a.twos_[k] ^ b.twos_[k]);
    if (diff) {
      const std::size_t i = k * 64 + std::countr_zero(diff);
      return a[i] <=> b[i];
    }
  }
  return std::strong_ordering::equal;
}

std::size_t rank_mod3(std::span<const TernaryVector> vectors) {
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != vectors.front().size()) throw ArgumentError("rank_mod3: mixed dimensions");
    std::vector<std::uint32_t> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    rows.push_back(std::move(r));
  }
  return rank_mod_q(rows, 3);
}

}  // namespace mulbasis
