#pragma once
// GF(p^m) for q = p^m <= 2^16. Elements are stored packed: the coefficient
// vector (c_0..c_{m-1}) of the polynomial-basis representation is encoded
// as the integer sum c_i * p^i, so values range over [0, q). For p = 2 the
// packing is the usual bit pattern.
//
// Multiplication normally goes through log/antilog tables built once per
// field from a found generator; mul_poly is the table-free reference path
// (polynomial product + long division by the reduction polynomial) that
// the tables are validated against in tests.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aelab {

using felem = uint16_t;

class Field {
public:
  // reduction: coefficients c_0..c_m over GF(p), monic (c_m == 1), degree m,
  // irreducible (verified here by trial division against every monic
  // polynomial of degree <= m/2).
  Field(int p, int m, std::vector<uint8_t> reduction);

  // Default reduction polynomial: x^8+x^4+x^3+x+1 for GF(256); otherwise the
  // first irreducible monic polynomial of degree m in ascending packed order.
  static Field with_default_poly(int p, int m);

  // q -> (p, m) when q is a prime power, else nullopt.
  static std::optional<std::pair<int, int>> parse_prime_power(uint32_t q);

  static bool is_irreducible(int p, const std::vector<uint8_t>& poly);

  int p() const { return p_; }
  int m() const { return m_; }
  uint32_t q() const { return q_; }
  const std::vector<uint8_t>& reduction() const { return red_; }

  felem add(felem a, felem b) const;
  felem sub(felem a, felem b) const;
  felem neg(felem a) const;
  felem mul(felem a, felem b) const;
  felem inv(felem a) const;  // throws std::domain_error on 0
  felem div(felem a, felem b) const { return mul(a, inv(b)); }
  felem pow(felem a, uint64_t e) const;

  felem mul_poly(felem a, felem b) const;  // reference multiplication

  felem one() const { return 1; }

  // Serialization: lowercase hex of the packed value, little-endian byte
  // order, fixed width (the bytes needed to encode q-1).
  int byte_width() const { return byte_width_; }
  std::string to_hex(felem a) const;
  felem from_hex(std::string_view s) const;  // throws std::invalid_argument

  bool operator==(const Field& o) const {
    return p_ == o.p_ && m_ == o.m_ && red_ == o.red_;
  }

private:
  void build_tables();

  int p_, m_;
  uint32_t q_;
  int byte_width_;
  std::vector<uint8_t> red_;
  std::vector<uint16_t> log_;  // log_[a] defined for a != 0
  std::vector<felem> exp_;     // exp_[i] = g^i, doubled length to skip a mod
};

}  // namespace aelab
