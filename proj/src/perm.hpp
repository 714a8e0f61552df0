#pragma once
// Permutations of {1..N} as image tables (0-based internally, 1-based in
// serialized form). Composition is the right-action convention: points flow
// left to right, compose(a, b) means "apply a, then b". This is what makes
// the braid-word-to-permutation map a homomorphism with word order
// preserved; the emult homomorphism tests fail loudly under the wrong
// convention.

#include <cstdint>
#include <vector>

namespace aelab {

struct Perm {
  std::vector<int32_t> img;  // img[i] = image of point i (0-based)

  int n() const { return static_cast<int>(img.size()); }
  bool operator==(const Perm& o) const { return img == o.img; }
};

Perm perm_identity(int n);
bool perm_is_valid(const Perm& a);
bool perm_is_identity(const Perm& a);
Perm perm_compose(const Perm& a, const Perm& b);  // apply a, then b
Perm perm_inverse(const Perm& a);
uint64_t perm_order(const Perm& a);  // lcm of cycle lengths

// Canonical cycle decomposition: each cycle rotated so its least point is
// first, cycles sorted by least point, fixed points omitted. 0-based points.
std::vector<std::vector<int32_t>> cycle_decompose(const Perm& a);

// a == b^e for some e in [1, order(b)]
bool is_power_of(const Perm& a, const Perm& b);

std::vector<int32_t> support(const Perm& a);  // points i with img[i] != i

// transposition swapping positions i, i+1 for 1-based generator index i
Perm perm_transposition(int n, int i);

}  // namespace aelab
