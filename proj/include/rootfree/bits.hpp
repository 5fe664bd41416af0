#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Fixed-universe bitset for subsets of positive roots.  Systems in the
// enumeration budget have at most 64 positive roots, so hot paths work
// on plain uint64_t masks; this type exists so that construction-only
// systems (E7, E8, big reducible products) still get correct subsets.

namespace rootfree {

struct Bits {
  int n = 0;
  std::vector<std::uint64_t> w;

  Bits() {}
  explicit Bits(int size) : n(size), w((size + 63) / 64, 0) {}
  static Bits from_mask(int size, std::uint64_t m) {
    Bits b(size);
    assert(size <= 64 || (m >> size) == 0);
    if (!b.w.empty()) b.w[0] = m;
    return b;
  }

  int size() const { return n; }
  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w[i >> 6] |= 1ull << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(1ull << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool fits_u64() const { return n <= 64; }
  std::uint64_t mask64() const {
    assert(fits_u64());
    return w.empty() ? 0 : w[0];
  }

  Bits operator&(const Bits& o) const {
    Bits r(n);
    for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r(n);
    for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] | o.w[i];
    return r;
  }
  Bits operator^(const Bits& o) const {
    Bits r(n);
    for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] ^ o.w[i];
    return r;
  }
  Bits operator~() const {
    Bits r(n);
    for (size_t i = 0; i < w.size(); ++i) r.w[i] = ~w[i];
    int tail = n & 63;
    if (tail && !r.w.empty()) r.w.back() &= (1ull << tail) - 1;
    return r;
  }
  bool operator==(const Bits& o) const { return n == o.n && w == o.w; }
  bool operator!=(const Bits& o) const { return !(*this == o); }
  bool operator<(const Bits& o) const {  // numeric order, for determinism
    if (n != o.n) return n < o.n;
    for (size_t i = w.size(); i-- > 0;)
      if (w[i] != o.w[i]) return w[i] < o.w[i];
    return false;
  }
  bool subset_of(const Bits& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }

  // index of the lowest set bit, -1 if none
  int lowest() const {
    for (size_t k = 0; k < w.size(); ++k)
      if (w[k]) return (int)(k * 64) + std::countr_zero(w[k]);
    return -1;
  }
  // lowest set bit at index >= i, -1 if none
  int next_set(int i) const {
    if (i >= n) return -1;
    size_t k = (size_t)(i >> 6);
    std::uint64_t x = w[k] & ~((1ull << (i & 63)) - 1);
    for (;;) {
      if (x) return (int)(k * 64) + std::countr_zero(x);
      if (++k >= w.size()) return -1;
      x = w[k];
    }
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (size_t k = 0; k < w.size(); ++k) {
      std::uint64_t x = w[k];
      while (x) {
        out.push_back((int)(k * 64) + std::countr_zero(x));
        x &= x - 1;
      }
    }
    return out;
  }

  // hex digits of the mask read as one big integer, no 0x prefix
  std::string hex() const {
    static const char* d = "0123456789abcdef";
    std::string s;
    bool started = false;
    for (size_t k = w.size(); k-- > 0;) {
      for (int shift = 60; shift >= 0; shift -= 4) {
        int nib = (w[k] >> shift) & 15;
        if (nib || started) {
          s.push_back(d[nib]);
          started = true;
        }
      }
    }
    return started ? s : "0";
  }
};

struct BitsHash {
  size_t operator()(const Bits& b) const {
    size_t h = std::hash<int>()(b.n);
    for (auto x : b.w) h = h * 1000003u ^ std::hash<std::uint64_t>()(x);
    return h;
  }
};

}  // namespace rootfree
