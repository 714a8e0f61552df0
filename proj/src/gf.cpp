#include "gf.hpp"

#include <stdexcept>

namespace aelab {

namespace {

// digit helpers: packed value <-> base-p coefficient vector
std::vector<uint8_t> unpack(uint32_t v, int p, int len) {
  std::vector<uint8_t> d(len, 0);
  for (int i = 0; i < len && v; ++i) {
    d[i] = static_cast<uint8_t>(v % p);
    v /= p;
  }
  return d;
}

uint32_t pack(const std::vector<uint8_t>& d, int p) {
  uint64_t v = 0;
  for (size_t i = d.size(); i > 0; --i) v = v * p + d[i - 1];
  return static_cast<uint32_t>(v);
}

int degree_of(const std::vector<uint8_t>& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

// polynomial product over GF(p)
std::vector<uint8_t> poly_mul(const std::vector<uint8_t>& a,
                              const std::vector<uint8_t>& b, int p) {
  std::vector<uint8_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<uint8_t>((r[i + j] + a[i] * b[j]) % p);
  }
  return r;
}

// in-place remainder of a modulo monic divisor d
void poly_mod(std::vector<uint8_t>& a, const std::vector<uint8_t>& d, int p) {
  int dd = degree_of(d);
  for (int i = degree_of(a); i >= dd; i = degree_of(a)) {
    int f = a[i];  // divisor monic, so the quotient digit is a[i]
    for (int j = 0; j <= dd; ++j) {
      int k = i - dd + j;
      a[k] = static_cast<uint8_t>(((a[k] - f * d[j]) % p + p * p) % p);
    }
  }
}

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

bool Field::is_irreducible(int p, const std::vector<uint8_t>& poly) {
  int m = degree_of(poly);
  if (m < 1) return false;
  if (poly[m] != 1) return false;  // monic required
  if (m == 1) return true;
  // trial division by every monic polynomial of degree 1..m/2
  for (int d = 1; 2 * d <= m; ++d) {
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (uint64_t low = 0; low < count; ++low) {
      std::vector<uint8_t> div = unpack(static_cast<uint32_t>(low), p, d + 1);
      div[d] = 1;
      std::vector<uint8_t> rem = poly;
      poly_mod(rem, div, p);
      if (degree_of(rem) < 0) return false;
    }
  }
  return true;
}

std::optional<std::pair<int, int>> Field::parse_prime_power(uint32_t q) {
  if (q < 2 || q > 65536) return std::nullopt;
  for (uint32_t p = 2; p <= q; ++p) {
    if (q % p) continue;
    if (!is_prime(p)) return std::nullopt;  // smallest factor must be prime
    uint32_t v = q;
    int m = 0;
    while (v % p == 0) {
      v /= p;
      ++m;
    }
    if (v != 1) return std::nullopt;
    return std::make_pair(static_cast<int>(p), m);
  }
  return std::nullopt;
}

Field Field::with_default_poly(int p, int m) {
  if (p == 2 && m == 8) {
    // x^8 + x^4 + x^3 + x + 1, the widely used octic
    return Field(2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1});
  }
  uint64_t count = 1;
  for (int i = 0; i < m; ++i) count *= p;
  for (uint64_t low = 0; low < count; ++low) {
    std::vector<uint8_t> cand = unpack(static_cast<uint32_t>(low), p, m + 1);
    cand[m] = 1;
    if (is_irreducible(p, cand)) return Field(p, m, cand);
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

Field::Field(int p, int m, std::vector<uint8_t> reduction)
    : p_(p), m_(m), red_(std::move(reduction)) {
  if (p < 2 || !is_prime(static_cast<uint32_t>(p)))
    throw std::invalid_argument("field characteristic must be prime");
  if (m < 1) throw std::invalid_argument("field degree must be >= 1");
  uint64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (q > 65536) throw std::invalid_argument("field order above 2^16");
  }
  q_ = static_cast<uint32_t>(q);
  if (q_ < 2) throw std::invalid_argument("field order must be >= 2");
  if (static_cast<int>(red_.size()) != m + 1)
    throw std::invalid_argument("reduction polynomial must have degree m");
  for (uint8_t c : red_)
    if (c >= p) throw std::invalid_argument("reduction coefficient out of range");
  if (red_[m] != 1) throw std::invalid_argument("reduction polynomial must be monic");
  if (!is_irreducible(p, red_))
    throw std::invalid_argument("reduction polynomial is reducible");
  byte_width_ = 1;
  for (uint32_t v = (q_ - 1) >> 8; v; v >>= 8) ++byte_width_;
  build_tables();
}

felem Field::add(felem a, felem b) const {
  if (p_ == 2) return a ^ b;
  if (m_ == 1) return static_cast<felem>((a + b) % p_);
  uint32_t r = 0, mul = 1;
  for (int i = 0; i < m_; ++i) {
    r += static_cast<uint32_t>((a % p_ + b % p_) % p_) * mul;
    a = static_cast<felem>(a / p_);
    b = static_cast<felem>(b / p_);
    mul *= p_;
  }
  return static_cast<felem>(r);
}

felem Field::neg(felem a) const {
  if (p_ == 2) return a;
  if (m_ == 1) return static_cast<felem>(a ? p_ - a : 0);
  uint32_t r = 0, mul = 1;
  for (int i = 0; i < m_; ++i) {
    int d = a % p_;
    r += static_cast<uint32_t>(d ? p_ - d : 0) * mul;
    a = static_cast<felem>(a / p_);
    mul *= p_;
  }
  return static_cast<felem>(r);
}

felem Field::sub(felem a, felem b) const { return add(a, neg(b)); }

felem Field::mul_poly(felem a, felem b) const {
  std::vector<uint8_t> pa = unpack(a, p_, m_);
  std::vector<uint8_t> pb = unpack(b, p_, m_);
  std::vector<uint8_t> pr = poly_mul(pa, pb, p_);
  poly_mod(pr, red_, p_);
  pr.resize(m_);
  return static_cast<felem>(pack(pr, p_));
}

void Field::build_tables() {
  // factor q-1, then scan packed values ascending for a generator
  std::vector<uint32_t> prime_factors;
  uint32_t n = q_ - 1;
  for (uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      prime_factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) prime_factors.push_back(n);

  auto pow_ref = [this](felem a, uint32_t e) {
    felem r = 1, base = a;
    while (e) {
      if (e & 1) r = mul_poly(r, base);
      base = mul_poly(base, base);
      e >>= 1;
    }
    return r;
  };

  felem g = 0;
  for (uint32_t cand = 1; cand < q_; ++cand) {
    bool ok = true;
    for (uint32_t f : prime_factors) {
      if (pow_ref(static_cast<felem>(cand), (q_ - 1) / f) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = static_cast<felem>(cand);
      break;
    }
  }
  if (!g && q_ > 2) throw std::logic_error("no field generator found");
  if (q_ == 2) g = 1;

  log_.assign(q_, 0);
  exp_.assign(2 * (q_ - 1), 0);
  felem cur = 1;
  for (uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = cur;
    exp_[i + (q_ - 1)] = cur;
    log_[cur] = static_cast<uint16_t>(i);
    cur = mul_poly(cur, g);
  }
  if (cur != 1) throw std::logic_error("generator order mismatch");
}

felem Field::mul(felem a, felem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

felem Field::inv(felem a) const {
  if (a == 0) throw std::domain_error("division by zero in field");
  return exp_[(q_ - 1) - log_[a]];
}

felem Field::pow(felem a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  uint64_t le = (static_cast<uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
  return exp_[le];
}

std::string Field::to_hex(felem a) const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(2 * byte_width_);
  for (int i = 0; i < byte_width_; ++i) {  // little-endian bytes
    uint8_t byte = static_cast<uint8_t>(a >> (8 * i));
    s.push_back(digits[byte >> 4]);
    s.push_back(digits[byte & 0xf]);
  }
  return s;
}

felem Field::from_hex(std::string_view s) const {
  if (s.size() != static_cast<size_t>(2 * byte_width_))
    throw std::invalid_argument("field element hex has wrong width");
  uint32_t v = 0;
  for (int i = 0; i < byte_width_; ++i) {
    uint32_t byte = 0;
    for (int j = 0; j < 2; ++j) {
      char c = s[2 * i + j];
      uint32_t d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = 10 + (c - 'a');
      else throw std::invalid_argument("field element hex has invalid digit");
      byte = (byte << 4) | d;
    }
    v |= byte << (8 * i);
  }
  if (v >= q_) throw std::invalid_argument("field element out of range");
  return static_cast<felem>(v);
}

}  // namespace aelab
