#pragma once
// Braid words over the Artin generators of B_N: letter +i / -i means
// b_i^{+1} / b_i^{-1}, 1 <= i <= N-1. The empty word is the identity braid.

#include <cstdint>
#include <utility>
#include <vector>

#include "perm.hpp"
#include "rng.hpp"

namespace aelab {

struct Braid {
  int n = 0;
  std::vector<int32_t> letters;

  bool operator==(const Braid& o) const { return n == o.n && letters == o.letters; }
};

bool braid_is_valid(const Braid& w);

// cancel adjacent b_i b_i^{-1} pairs (single stack pass)
Braid free_reduce(Braid w);

Braid braid_inverse(const Braid& w);  // reversed, sign-flipped

Braid braid_concat(const Braid& u, const Braid& v);  // not reduced

Perm permutation_of(const Braid& w);

// z a z^{-1}, freely reduced
Braid conjugate(const Braid& z, const Braid& a);

// lower band {1..floor(n/2)-1}, upper band {floor(n/2)+1..n-1}; every cross
// pair differs by >= 2, so the bands commute letterwise. 1-based inclusive.
struct Bands {
  std::pair<int, int> lower, upper;
};
Bands commuting_bands(int n);  // throws if n < 5

// length letters: index uniform over alphabet, sign uniform; freely reduced
// afterward. Alphabet entries are 1-based generator indices.
Braid random_word(int n, int length, const std::vector<int>& alphabet, Rng& rng);

// positive word whose permutation image is perm: bubble-sort the image
// table, emitting the letter of each adjacent swap in the order performed.
// Length <= n(n-1)/2.
Braid braid_preimage(const Perm& perm);

struct ConjugateSet {
  int n = 0;
  std::vector<Braid> words;  // published z a_i z^{-1}
  std::vector<Perm> perms;   // cached permutation images
};

ConjugateSet make_conjugate_set(const Braid& z, const std::vector<Braid>& bases);

// Expand a signed index word over a word list: (i, +1) contributes words[i],
// (i, -1) its inverse. Freely reduced.
Braid expand_index_word(const std::vector<Braid>& words,
                        const std::vector<std::pair<int32_t, int32_t>>& idxw);

// w repeated e times, freely reduced
Braid braid_power(const Braid& w, int e);

}  // namespace aelab
