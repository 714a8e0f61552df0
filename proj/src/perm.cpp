#include "perm.hpp"

#include <numeric>
#include <stdexcept>

namespace aelab {

Perm perm_identity(int n) {
  Perm p;
  p.img.resize(n);
  std::iota(p.img.begin(), p.img.end(), 0);
  return p;
}

bool perm_is_valid(const Perm& a) {
  int n = a.n();
  std::vector<char> seen(n, 0);
  for (int32_t v : a.img) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool perm_is_identity(const Perm& a) {
  for (int i = 0; i < a.n(); ++i)
    if (a.img[i] != i) return false;
  return true;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  if (a.n() != b.n()) throw std::invalid_argument("perm compose: size mismatch");
  Perm c;
  c.img.resize(a.n());
  for (int i = 0; i < a.n(); ++i) c.img[i] = b.img[a.img[i]];
  return c;
}

Perm perm_inverse(const Perm& a) {
  Perm r;
  r.img.resize(a.n());
  for (int i = 0; i < a.n(); ++i) r.img[a.img[i]] = i;
  return r;
}

uint64_t perm_order(const Perm& a) {
  int n = a.n();
  std::vector<char> seen(n, 0);
  uint64_t ord = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    uint64_t len = 0;
    int j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = a.img[j];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::vector<std::vector<int32_t>> cycle_decompose(const Perm& a) {
  int n = a.n();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int32_t>> cycles;
  for (int i = 0; i < n; ++i) {  // ascending start point = canonical order
    if (seen[i] || a.img[i] == i) {
      seen[i] = 1;
      continue;
    }
    std::vector<int32_t> cyc;
    int j = i;
    while (!seen[j]) {
      seen[j] = 1;
      cyc.push_back(j);
      j = a.img[j];
    }
    cycles.push_back(std::move(cyc));  // starts at its least point already
  }
  return cycles;
}

bool is_power_of(const Perm& a, const Perm& b) {
  if (a.n() != b.n()) throw std::invalid_argument("is_power_of: size mismatch");
  uint64_t ord = perm_order(b);
  Perm cur = b;
  for (uint64_t e = 1; e <= ord; ++e) {
    if (cur == a) return true;
    cur = perm_compose(cur, b);
  }
  return false;
}

std::vector<int32_t> support(const Perm& a) {
  std::vector<int32_t> s;
  for (int i = 0; i < a.n(); ++i)
    if (a.img[i] != i) s.push_back(i);
  return s;
}

Perm perm_transposition(int n, int i) {
  if (i < 1 || i >= n) throw std::invalid_argument("transposition index out of range");
  Perm p = perm_identity(n);
  std::swap(p.img[i - 1], p.img[i]);
  return p;
}

}  // namespace aelab
