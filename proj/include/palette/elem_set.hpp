#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace palette {

// Ground set parameters: the palette is [ell] = {1,...,ell}, blocks/lists have
// exactly k elements.  ell <= 64 so element sets fit one machine word.
struct GroundParams {
  int k = 1;
  int ell = 1;

  GroundParams() = default;
  GroundParams(int k_, int ell_) : k(k_), ell(ell_) {
    if (k < 1 || k > ell || ell > 64)
      throw std::invalid_argument("GroundParams: need 1 <= k <= ell <= 64, got k=" +
                                  std::to_string(k_) + ", ell=" + std::to_string(ell_));
  }

  friend bool operator==(const GroundParams&, const GroundParams&) = default;
};

// A subset of {1,...,64}; element e is bit e-1.
struct ElemSet {
  std::uint64_t bits = 0;

  constexpr ElemSet() = default;
  constexpr explicit ElemSet(std::uint64_t raw) : bits(raw) {}
  ElemSet(std::initializer_list<int> elems) {
    for (int e : elems) insert(e);
  }

  static constexpr ElemSet full(int ell) {
    return ElemSet(ell >= 64 ? ~0ull : (1ull << ell) - 1);
  }

  constexpr bool contains(int e) const { return (bits >> (e - 1)) & 1u; }
  constexpr void insert(int e) { bits |= 1ull << (e - 1); }
  constexpr void erase(int e) { bits &= ~(1ull << (e - 1)); }
  constexpr int size() const { return std::popcount(bits); }
  constexpr bool empty() const { return bits == 0; }
  constexpr int min_element() const { return std::countr_zero(bits) + 1; }

  constexpr bool intersects(ElemSet o) const { return (bits & o.bits) != 0; }
  constexpr bool subset_of(ElemSet o) const { return (bits & ~o.bits) == 0; }
  constexpr ElemSet intersect(ElemSet o) const { return ElemSet(bits & o.bits); }
  constexpr ElemSet unite(ElemSet o) const { return ElemSet(bits | o.bits); }
  constexpr ElemSet minus(ElemSet o) const { return ElemSet(bits & ~o.bits); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t w = bits; w; w &= w - 1) out.push_back(std::countr_zero(w) + 1);
    return out;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

  friend constexpr bool operator==(ElemSet, ElemSet) = default;
};

// Order on sets viewed as sorted element sequences; a proper prefix sorts first.
// Elements below the lowest differing element e are common to both sets, so the
// sequences diverge there: if e is in `a`, then a < b exactly when b still has
// an element past the common part (otherwise b is a strict prefix of a).
constexpr bool lex_less(ElemSet a, ElemSet b) {
  if (a.bits == b.bits) return false;
  const std::uint64_t d = a.bits ^ b.bits;
  const std::uint64_t low = d & (~d + 1);
  if (low & a.bits) return b.bits >= low;
  return a.bits < low;
}

struct ElemSetLexLess {
  constexpr bool operator()(ElemSet a, ElemSet b) const { return lex_less(a, b); }
};

// Lexicographically first subset of size c: {1,...,c}.
constexpr ElemSet first_subset_of_size(int c) { return ElemSet::full(c); }

// Advance `s` to the next c-subset of [ell] in sequence-lex order
// ({1,2} < {1,3} < ... < {1,ell} < {2,3} < ...).  Returns false at the end.
inline bool next_subset_lex(ElemSet& s, int ell) {
  const int c = s.size();
  if (c == 0) return false;
  int idx[64];
  int t = 0;
  for (std::uint64_t w = s.bits; w; w &= w - 1) idx[t++] = std::countr_zero(w) + 1;
  int j = c - 1;
  while (j >= 0 && idx[j] == ell - (c - 1 - j)) --j;
  if (j < 0) return false;
  ++idx[j];
  for (int i = j + 1; i < c; ++i) idx[i] = idx[j] + (i - j);
  ElemSet next;
  for (int i = 0; i < c; ++i) next.insert(idx[i]);
  s = next;
  return true;
}

inline std::vector<ElemSet> all_subsets_of_size(int ell, int c) {
  std::vector<ElemSet> out;
  if (c > ell) return out;
  ElemSet s = first_subset_of_size(c);
  out.push_back(s);
  while (next_subset_lex(s, ell)) out.push_back(s);
  return out;
}

// Visit every subset of [ell] ordered by cardinality, then lex within each
// cardinality.  fn returns true to stop early.
template <class Fn>
bool for_each_subset_by_card(int ell, Fn&& fn) {
  for (int c = 0; c <= ell; ++c) {
    ElemSet s = first_subset_of_size(c);
    do {
      if (fn(s)) return true;
    } while (next_subset_lex(s, ell));
  }
  return false;
}

}  // namespace palette
