#include "braid.hpp"

#include <algorithm>
#include <stdexcept>

namespace aelab {

bool braid_is_valid(const Braid& w) {
  if (w.n < 2) return w.letters.empty();
  for (int32_t l : w.letters) {
    int i = std::abs(l);
    if (i < 1 || i > w.n - 1) return false;
  }
  return true;
}

Braid free_reduce(Braid w) {
  std::vector<int32_t> out;
  out.reserve(w.letters.size());
  for (int32_t l : w.letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  w.letters = std::move(out);
  return w;
}

Braid braid_inverse(const Braid& w) {
  Braid r;
  r.n = w.n;
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(-*it);
  return r;
}

Braid braid_concat(const Braid& u, const Braid& v) {
  if (u.n != v.n) throw std::invalid_argument("braid concat: strand counts differ");
  Braid r = u;
  r.letters.insert(r.letters.end(), v.letters.begin(), v.letters.end());
  return r;
}

Perm permutation_of(const Braid& w) {
  Perm p = perm_identity(w.n);
  // fold left-to-right; composing on the right with the transposition
  // (i, i+1) exchanges the values i and i+1 wherever they sit in the table
  for (int32_t l : w.letters) {
    int32_t i = std::abs(l) - 1;
    for (auto& v : p.img) {
      if (v == i)
        v = i + 1;
      else if (v == i + 1)
        v = i;
    }
  }
  return p;
}

Braid conjugate(const Braid& z, const Braid& a) {
  if (z.n != a.n) throw std::invalid_argument("conjugate: strand counts differ");
  Braid r = braid_concat(braid_concat(z, a), braid_inverse(z));
  return free_reduce(std::move(r));
}

Bands commuting_bands(int n) {
  if (n < 5)
    throw std::invalid_argument("commuting_bands: need n >= 5 for two nonempty bands");
  int half = n / 2;
  return Bands{{1, half - 1}, {half + 1, n - 1}};
}

Braid random_word(int n, int length, const std::vector<int>& alphabet, Rng& rng) {
  if (alphabet.empty()) throw std::invalid_argument("random_word: empty alphabet");
  Braid w;
  w.n = n;
  w.letters.reserve(length);
  for (int i = 0; i < length; ++i) {
    int idx = alphabet[rng.below(alphabet.size())];
    int s = rng.sign();
    w.letters.push_back(s * idx);
  }
  if (!braid_is_valid(w)) throw std::invalid_argument("random_word: alphabet letter out of range");
  return free_reduce(std::move(w));
}

Braid braid_preimage(const Perm& perm) {
  int n = perm.n();
  std::vector<int32_t> arr = perm.img;
  Braid w;
  w.n = n;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j = 0; j + 1 < n; ++j) {
      if (arr[j] > arr[j + 1]) {
        std::swap(arr[j], arr[j + 1]);
        w.letters.push_back(j + 1);
        changed = true;
      }
    }
  }
  return w;
}

Braid expand_index_word(const std::vector<Braid>& words,
                        const std::vector<std::pair<int32_t, int32_t>>& idxw) {
  if (words.empty()) throw std::invalid_argument("expand_index_word: no words");
  Braid w;
  w.n = words.front().n;
  for (auto [i, s] : idxw) {
    if (i < 0 || static_cast<size_t>(i) >= words.size())
      throw std::invalid_argument("expand_index_word: index out of range");
    if (s != 1 && s != -1)
      throw std::invalid_argument("expand_index_word: sign must be +1 or -1");
    const Braid& c = words[i];
    if (s > 0)
      w = braid_concat(w, c);
    else
      w = braid_concat(w, braid_inverse(c));
  }
  return free_reduce(std::move(w));
}

Braid braid_power(const Braid& w, int e) {
  Braid r;
  r.n = w.n;
  for (int i = 0; i < e; ++i) r = braid_concat(r, w);
  return free_reduce(std::move(r));
}

ConjugateSet make_conjugate_set(const Braid& z, const std::vector<Braid>& bases) {
  if (bases.empty()) throw std::invalid_argument("conjugate set must be nonempty");
  ConjugateSet cs;
  cs.n = z.n;
  for (const Braid& a : bases) {
    Braid c = conjugate(z, a);
    cs.perms.push_back(permutation_of(c));
    cs.words.push_back(std::move(c));
  }
  return cs;
}

}  // namespace aelab
