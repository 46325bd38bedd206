#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace influence {

using Agent = std::string;

/// Agent sets are ordered lexicographically everywhere, so rendering and
/// iteration are deterministic.
using AgentSet = std::set<Agent>;

/// Thrown when an input names an agent outside the relevant universe or is
/// otherwise structurally invalid.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "{a, b, c}"; "{}" for the empty set.
inline std::string format_set(const AgentSet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& a : set) {
    if (!first) out += ", ";
    out += a;
    first = false;
  }
  out += "}";
  return out;
}

inline bool is_subset(const AgentSet& small, const AgentSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline AgentSet set_union(const AgentSet& x, const AgentSet& y) {
  AgentSet out = x;
  out.insert(y.begin(), y.end());
  return out;
}

inline AgentSet set_difference(const AgentSet& x, const AgentSet& y) {
  AgentSet out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::inserter(out, out.end()));
  return out;
}

/// Dense bit set over agent indices of a fixed universe. Index order is the
/// lexicographic order of agent names.
class AgentMask {
 public:
  AgentMask() = default;
  explicit AgentMask(std::size_t universe) : size_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return size_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  bool subset_of(const AgentMask& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }
  bool intersects(const AgentMask& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & other.words_[k]) return true;
    return false;
  }

  AgentMask& operator|=(const AgentMask& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  AgentMask& operator&=(const AgentMask& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  AgentMask operator~() const {
    AgentMask out(size_);
    for (std::size_t k = 0; k < words_.size(); ++k) out.words_[k] = ~words_[k];
    out.trim();
    return out;
  }
  friend AgentMask operator|(AgentMask x, const AgentMask& y) { return x |= y; }
  friend AgentMask operator&(AgentMask x, const AgentMask& y) { return x &= y; }

  friend bool operator==(const AgentMask&, const AgentMask&) = default;

  /// Lexicographic comparison of the two sets viewed as ascending index
  /// sequences (so {0, 2} < {1}, and {0} < {0, 1}).
  friend bool lex_less(const AgentMask& x, const AgentMask& y) {
    for (std::size_t k = 0; k < x.words_.size(); ++k) {
      std::uint64_t diff = x.words_[k] ^ y.words_[k];
      if (diff == 0) continue;
      std::size_t bit = static_cast<std::size_t>(std::countr_zero(diff));
      bool x_has = (x.words_[k] >> bit) & 1U;
      // The set holding the smallest differing element is smaller, unless the
      // other set has nothing after that point (then it is a proper prefix).
      const AgentMask& other = x_has ? y : x;
      bool other_continues = other.any_from(k * 64 + bit + 1);
      return x_has ? other_continues : !other_continues;
    }
    return false;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        std::size_t bit = static_cast<std::size_t>(std::countr_zero(w));
        f(k * 64 + bit);
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = size_;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  bool any_from(std::size_t i) const {
    for (std::size_t j = i; j < size_; ++j)
      if (test(j)) return true;
    return false;
  }
  void trim() {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct AgentMaskHash {
  std::size_t operator()(const AgentMask& m) const { return m.hash(); }
};

}  // namespace influence
