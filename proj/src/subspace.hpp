#pragma once
// Subspaces of F_q^amb kept in reduced row-echelon form with strictly
// increasing pivots. Optionally tracks, for every echelon row, its
// expression over the originally inserted (span-growing) vectors, which is
// what lets the attack read off lambda coefficients over the alpha_i basis.

#include <optional>
#include <vector>

#include "mat.hpp"
#include "rng.hpp"

namespace aelab {

class Span {
public:
  Span(int ambient_dim, bool track_coeffs = false)
      : amb_(ambient_dim), track_(track_coeffs) {}

  int ambient_dim() const { return amb_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<felem>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }

  // true if the span grew (v independent of current basis)
  bool insert(const Field& F, const std::vector<felem>& v);

  bool contains(const Field& F, const std::vector<felem>& v) const;

  // Coefficients lambda over the ORIGINAL inserted vectors such that
  // v == sum lambda_i * original_i; nullopt if v is outside the span.
  // Requires track_coeffs.
  std::optional<std::vector<felem>> express(const Field& F,
                                            const std::vector<felem>& v) const;

  size_t storage_bytes() const;

private:
  // reduce v in place against the echelon rows; record row usage if asked
  void reduce(const Field& F, std::vector<felem>& v,
              std::vector<felem>* used) const;

  int amb_;
  bool track_;
  std::vector<std::vector<felem>> rows_;  // RREF, pivot entries == 1
  std::vector<int> piv_;
  std::vector<std::vector<felem>> coef_;  // expression of rows_ over originals
  int n_orig_ = 0;
};

Span span_intersect(const Field& F, const Span& u, const Span& w);

// Random basis combination that unflattens to an invertible matrix; the
// ambient dimension must be a perfect square. nullopt when the budget is
// exhausted or the span is zero.
std::optional<Mat> random_invertible_in(const Field& F, const Span& s, Rng& rng,
                                        int budget);

}  // namespace aelab
