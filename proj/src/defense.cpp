#include "defense.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aelab {

namespace {

bool is_odd_prime(int x) {
  if (x < 3 || x % 2 == 0) return false;
  for (int d = 3; d * d <= x; d += 2)
    if (x % d == 0) return false;
  return true;
}

// p-cycle visiting pts[0] -> pts[1] -> ... -> pts.back() -> pts[0], as a
// full permutation on n points
Perm cycle_perm(int n, const std::vector<int32_t>& pts) {
  Perm r = perm_identity(n);
  for (size_t i = 0; i < pts.size(); ++i)
    r.img[pts[i]] = pts[(i + 1) % pts.size()];
  return r;
}

}  // namespace

PrimeBudget prime_budget(int n, bool literal) {
  if (n < 3) throw std::invalid_argument("prime_budget: need n >= 3");
  PrimeBudget b;
  b.n = n;
  if (!literal) {
    int sum = 0;
    for (int cand = 3;; cand += 2) {
      if (!is_odd_prime(cand)) continue;
      if (sum + cand > n) break;
      b.primes.push_back(cand);
      sum += cand;
    }
  } else {
    // include every odd prime up to the largest one whose predecessors sum
    // to <= n; the included primes themselves may overshoot n
    int p_last = 0, sum_before = 0;
    for (int cand = 3;; cand += 2) {
      if (!is_odd_prime(cand)) continue;
      if (sum_before > n) break;
      p_last = cand;
      sum_before += cand;
    }
    for (int cand = 3; cand <= p_last; cand += 2)
      if (is_odd_prime(cand)) b.primes.push_back(cand);
  }
  if (b.primes.empty()) throw std::logic_error("prime_budget: empty");
  b.p_max = b.primes.back();
  b.order_product = 1;
  for (int p : b.primes) b.order_product *= static_cast<uint64_t>(p);
  return b;
}

HighOrderPermSet gen_high_order_perms(int n, int k, Rng& rng, bool literal_budget) {
  if (k < 2) throw std::invalid_argument("gen_high_order_perms: need k >= 2");
  HighOrderPermSet out;
  out.n = n;
  out.k = k;
  out.budget = prime_budget(n, literal_budget);
  int total = std::accumulate(out.budget.primes.begin(), out.budget.primes.end(), 0);
  if (total > n)
    throw std::invalid_argument("gen_high_order_perms: prime blocks exceed n points");
  int at = 0;
  for (int p : out.budget.primes) {
    std::vector<int32_t> blk(p);
    for (int i = 0; i < p; ++i) blk[i] = at + i;
    out.supports.push_back(std::move(blk));
    at += p;
  }
  // chosen[b] = cycles already placed on block b, kept for power-freeness
  std::vector<std::vector<Perm>> chosen(out.supports.size());
  for (int i = 0; i < k; ++i) {
    Perm rho = perm_identity(n);
    for (size_t bi = 0; bi < out.supports.size(); ++bi) {
      int p = out.budget.primes[bi];
      std::vector<int32_t> pts = out.supports[bi];
      Perm cyc;
      constexpr int kMaxTries = 4096;
      int tries = 0;
      for (;;) {
        if (++tries > kMaxTries)
          throw std::runtime_error("gen_high_order_perms: power-free rejection stalled");
        rng.shuffle(pts);
        cyc = cycle_perm(n, pts);
        if (p == 3) break;  // all 3-cycles on one block are mutual powers
        bool clash = false;
        for (const Perm& prev : chosen[bi])
          if (is_power_of(cyc, prev)) {
            clash = true;
            break;
          }
        if (!clash) break;
      }
      chosen[bi].push_back(cyc);
      rho = perm_compose(rho, cyc);
    }
    if (perm_order(rho) != out.budget.order_product)
      throw std::logic_error("gen_high_order_perms: order mismatch");
    out.rhos.push_back(std::move(rho));
  }
  return out;
}

OrderStats order_statistics_perms(int n, const std::vector<Perm>& gens,
                                  int word_len, int64_t samples, Rng& rng) {
  if (word_len < 1) throw std::invalid_argument("order_statistics: word_len >= 1");
  if (gens.empty()) throw std::invalid_argument("order_statistics: no generators");
  std::vector<Perm> inv;
  inv.reserve(gens.size());
  for (const Perm& g : gens) inv.push_back(perm_inverse(g));
  OrderStats st;
  st.samples = samples;
  st.threshold_asym = std::exp(0.5 * std::sqrt(n * std::log(static_cast<double>(n))));
  int64_t gt_n = 0, gt_asym = 0;
  size_t kk = gens.size();
  for (int64_t s = 0; s < samples; ++s) {
    int len = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(word_len)));
    Perm w = perm_identity(n);
    for (int j = 0; j < len; ++j) {
      size_t idx = rng.below(kk);
      w = perm_compose(w, rng.sign() > 0 ? gens[idx] : inv[idx]);
    }
    uint64_t o = perm_order(w);
    ++st.histogram[o];
    if (o > static_cast<uint64_t>(n)) ++gt_n;
    if (static_cast<double>(o) > st.threshold_asym) ++gt_asym;
  }
  st.frac_gt_n = samples ? static_cast<double>(gt_n) / samples : 0.0;
  st.frac_gt_asym = samples ? static_cast<double>(gt_asym) / samples : 0.0;
  return st;
}

OrderStats order_statistics(const HighOrderPermSet& set, int word_len,
                            int64_t samples, Rng& rng) {
  return order_statistics_perms(set.n, set.rhos, word_len, samples, rng);
}

SystemParams defense_conjugates(const SystemParams& params,
                                const HighOrderPermSet& set, Rng& rng,
                                Braid* z_out, int bob_base_len) {
  if (set.n != params.n)
    throw std::invalid_argument("defense_conjugates: size mismatch");
  int n = params.n;
  int support = std::accumulate(set.budget.primes.begin(), set.budget.primes.end(), 0);
  if (support + 2 > n)
    throw std::invalid_argument("defense_conjugates: no room for the upper band");
  std::vector<Braid> alice_bases;
  for (const Perm& rho : set.rhos) alice_bases.push_back(braid_preimage(rho));
  std::vector<int> full, hi;
  for (int i = 1; i <= n - 1; ++i) full.push_back(i);
  for (int i = support + 1; i <= n - 1; ++i) hi.push_back(i);
  Braid z = random_word(n, params.z_length, full, rng);
  std::vector<Braid> bob_bases;
  size_t l = params.bob_conjugates.words.size();
  for (size_t j = 0; j < l; ++j)
    bob_bases.push_back(random_word(n, bob_base_len, hi, rng));
  SystemParams out = make_system(params.field, n, params.m0, params.tvalues, z,
                                 alice_bases, bob_bases);
  if (z_out) *z_out = z;
  return out;
}

}  // namespace aelab
