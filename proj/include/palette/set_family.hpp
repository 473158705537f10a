#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "palette/elem_set.hpp"
#include "palette/errors.hpp"

namespace palette {

// A k-uniform family of subsets of [ell].  Blocks are kept distinct and in
// sequence-lex order, so two families are equal iff their block vectors are.
struct SetFamily {
  GroundParams params;
  std::vector<ElemSet> blocks;

  SetFamily() = default;
  SetFamily(GroundParams p, std::vector<ElemSet> bs) : params(p), blocks(std::move(bs)) {
    const ElemSet ground = ElemSet::full(params.ell);
    for (ElemSet b : blocks) {
      if (b.size() != params.k)
        throw std::invalid_argument("SetFamily: block " + b.str() + " does not have size k=" +
                                    std::to_string(params.k));
      if (!b.subset_of(ground))
        throw std::invalid_argument("SetFamily: block " + b.str() + " leaves [" +
                                    std::to_string(params.ell) + "]");
    }
    std::sort(blocks.begin(), blocks.end(), ElemSetLexLess{});
    if (std::adjacent_find(blocks.begin(), blocks.end()) != blocks.end())
      throw std::invalid_argument("SetFamily: duplicate block");
  }

  int size() const { return static_cast<int>(blocks.size()); }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;
};

// Lex order on sorted block sequences.
inline bool family_lex_less(const std::vector<ElemSet>& a, const std::vector<ElemSet>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ElemSetLexLess{});
}

enum class PropertyKind { B, K };

struct PropertyWitness {
  PropertyKind kind;
  ElemSet witness;
};

/// Property B: a set that meets every block yet contains none.  Candidates are
/// scanned by cardinality then lex, so the returned witness is reproducible.
/// Empty return means the family does NOT have Property B.
inline std::optional<PropertyWitness> has_property_b(const SetFamily& fam) {
  std::optional<PropertyWitness> found;
  for_each_subset_by_card(fam.params.ell, [&](ElemSet cand) {
    for (ElemSet block : fam.blocks) {
      if (!block.intersects(cand) || block.subset_of(cand)) return false;
    }
    found = PropertyWitness{PropertyKind::B, cand};
    return true;
  });
  return found;
}

/// Property K(k,ell): a (k-1)-subset of [ell] intersecting every block.
/// Returns the lexicographically first such set, or empty if none exists.
inline std::optional<PropertyWitness> has_property_k(const SetFamily& fam) {
  const int c = fam.params.k - 1;
  ElemSet cand = first_subset_of_size(c);
  do {
    bool hits_all = true;
    for (ElemSet block : fam.blocks) {
      if (!block.intersects(cand)) {
        hits_all = false;
        break;
      }
    }
    if (hits_all) return PropertyWitness{PropertyKind::K, cand};
  } while (next_subset_lex(cand, fam.params.ell));
  return std::nullopt;
}

inline SetFamily apply_permutation(const SetFamily& fam, const std::vector<int>& perm) {
  // perm maps old element e (1-based) to perm[e-1].
  std::vector<ElemSet> out;
  out.reserve(fam.blocks.size());
  for (ElemSet b : fam.blocks) {
    ElemSet img;
    for (int e : b.elements()) img.insert(perm[e - 1]);
    out.push_back(img);
  }
  return SetFamily(fam.params, std::move(out));
}

namespace detail {

// Branch-and-bound over relabellings of [ell].  New labels are assigned in
// increasing order, so after `assigned` steps the unused labels are exactly
// {assigned+1,...,ell}.  Completing each block with the smallest unused labels
// gives a blockwise lex lower bound, and sorting those bounds gives a family
// that bounds every completion from below.
struct RelabelSearch {
  int ell = 0;
  const std::vector<ElemSet>& blocks;
  std::uint64_t block_union = 0;
  std::array<int, 65> new_of_old{};  // 0 = unassigned

  explicit RelabelSearch(const SetFamily& fam) : ell(fam.params.ell), blocks(fam.blocks) {
    for (ElemSet b : blocks) block_union |= b.bits;
  }

  std::vector<ElemSet> image_lower_bound(int assigned) const {
    std::vector<ElemSet> img(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      std::uint64_t known = 0;
      int missing = 0;
      for (std::uint64_t w = blocks[i].bits; w; w &= w - 1) {
        const int e = std::countr_zero(w) + 1;
        if (new_of_old[e]) {
          known |= 1ull << (new_of_old[e] - 1);
        } else {
          ++missing;
        }
      }
      known |= ((missing >= 64 ? ~0ull : (1ull << missing) - 1)) << assigned;
      img[i] = ElemSet(known);
    }
    std::sort(img.begin(), img.end(), ElemSetLexLess{});
    return img;
  }

  // Explores all assignments whose bound beats `best`; min_only stops at the
  // first strictly smaller image.
  bool search(int assigned, std::uint64_t used_old, std::vector<ElemSet>& best, bool min_only) {
    const std::vector<ElemSet> bound = image_lower_bound(assigned);
    if (!family_lex_less(bound, best)) return false;
    // All block elements labelled: the bound is the exact image.
    bool complete = true;
    for (std::uint64_t w = block_union; w; w &= w - 1) {
      if (!new_of_old[std::countr_zero(w) + 1]) {
        complete = false;
        break;
      }
    }
    if (complete) {
      best = bound;
      return true;
    }
    bool improved = false;
    for (int e = 1; e <= ell; ++e) {
      if (used_old & (1ull << (e - 1))) continue;
      new_of_old[e] = assigned + 1;
      if (search(assigned + 1, used_old | (1ull << (e - 1)), best, min_only)) {
        improved = true;
        if (min_only) {
          new_of_old[e] = 0;
          return true;
        }
      }
      new_of_old[e] = 0;
    }
    return improved;
  }
};

}  // namespace detail

/// True iff no relabelling of [ell] produces a lex-smaller family.
inline bool is_orbit_least(const SetFamily& fam) {
  if (fam.params.ell > 12)
    throw UnsupportedParameters("is_orbit_least: exact canonicalization needs ell <= 12");
  if (fam.blocks.empty()) return true;
  detail::RelabelSearch s(fam);
  std::vector<ElemSet> best = fam.blocks;
  return !s.search(0, 0, best, /*min_only=*/true);
}

/// Lexicographically least relabelling of the family; two families are
/// isomorphic iff their canonical forms are equal.
inline SetFamily canonical_form(const SetFamily& fam) {
  if (fam.params.ell > 12)
    throw UnsupportedParameters("canonical_form: exact canonicalization needs ell <= 12");
  if (fam.blocks.empty()) return fam;
  detail::RelabelSearch s(fam);
  std::vector<ElemSet> best = fam.blocks;
  s.search(0, 0, best, /*min_only=*/false);
  return SetFamily(fam.params, std::move(best));
}

}  // namespace palette
