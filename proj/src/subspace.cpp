#include "subspace.hpp"

#include <cmath>
#include <stdexcept>

namespace aelab {

void Span::reduce(const Field& F, std::vector<felem>& v,
                  std::vector<felem>* used) const {
  if (used) used->assign(rows_.size(), 0);
  for (size_t r = 0; r < rows_.size(); ++r) {
    felem f = v[piv_[r]];
    if (!f) continue;
    // rows are pivot-normalized, so the elimination factor is v[pivot]
    const auto& row = rows_[r];
    for (int j = piv_[r]; j < amb_; ++j)
      if (row[j]) v[j] = F.sub(v[j], F.mul(f, row[j]));
    if (used) (*used)[r] = f;
  }
}

bool Span::insert(const Field& F, const std::vector<felem>& vin) {
  if (static_cast<int>(vin.size()) != amb_)
    throw std::invalid_argument("span_insert: vector length != ambient dim");
  std::vector<felem> v = vin;
  std::vector<felem> used;
  reduce(F, v, track_ ? &used : nullptr);
  int p = -1;
  for (int j = 0; j < amb_; ++j) {
    if (v[j]) {
      p = j;
      break;
    }
  }
  if (p < 0) return false;  // already in span

  felem pv_inv = F.inv(v[p]);
  for (int j = p; j < amb_; ++j) v[j] = F.mul(pv_inv, v[j]);

  std::vector<felem> vcoef;
  if (track_) {
    // v_reduced = vin - sum used_r * row_r, then scaled by pv_inv.
    // Expression over originals: (e_new - sum used_r * coef_r) * pv_inv.
    vcoef.assign(n_orig_ + 1, 0);
    vcoef[n_orig_] = pv_inv;
    for (size_t r = 0; r < rows_.size(); ++r) {
      felem f = used[r];
      if (!f) continue;
      felem fs = F.mul(pv_inv, f);
      const auto& cr = coef_[r];
      for (size_t i = 0; i < cr.size(); ++i)
        if (cr[i]) vcoef[i] = F.sub(vcoef[i], F.mul(fs, cr[i]));
    }
    for (auto& c : coef_) c.resize(n_orig_ + 1, 0);
    ++n_orig_;
  }

  // back-eliminate the new pivot column from existing rows
  for (size_t r = 0; r < rows_.size(); ++r) {
    felem f = rows_[r][p];
    if (!f) continue;
    auto& row = rows_[r];
    for (int j = p; j < amb_; ++j)
      if (v[j]) row[j] = F.sub(row[j], F.mul(f, v[j]));
    if (track_) {
      auto& cr = coef_[r];
      for (size_t i = 0; i < vcoef.size(); ++i)
        if (vcoef[i]) cr[i] = F.sub(cr[i], F.mul(f, vcoef[i]));
    }
  }

  // keep pivots strictly increasing
  size_t at = 0;
  while (at < piv_.size() && piv_[at] < p) ++at;
  rows_.insert(rows_.begin() + at, std::move(v));
  piv_.insert(piv_.begin() + at, p);
  if (track_) coef_.insert(coef_.begin() + at, std::move(vcoef));
  return true;
}

bool Span::contains(const Field& F, const std::vector<felem>& vin) const {
  if (static_cast<int>(vin.size()) != amb_)
    throw std::invalid_argument("span contains: vector length != ambient dim");
  std::vector<felem> v = vin;
  reduce(F, v, nullptr);
  for (felem x : v)
    if (x) return false;
  return true;
}

std::optional<std::vector<felem>> Span::express(
    const Field& F, const std::vector<felem>& vin) const {
  if (!track_) throw std::logic_error("express requires coefficient tracking");
  if (static_cast<int>(vin.size()) != amb_)
    throw std::invalid_argument("span express: vector length != ambient dim");
  std::vector<felem> v = vin;
  std::vector<felem> used;
  reduce(F, v, &used);
  for (felem x : v)
    if (x) return std::nullopt;
  // v = sum used_r * row_r and row_r = sum coef_r_i * orig_i
  std::vector<felem> lambda(n_orig_, 0);
  for (size_t r = 0; r < rows_.size(); ++r) {
    felem f = used[r];
    if (!f) continue;
    const auto& cr = coef_[r];
    for (size_t i = 0; i < cr.size(); ++i)
      if (cr[i]) lambda[i] = F.add(lambda[i], F.mul(f, cr[i]));
  }
  return lambda;
}

size_t Span::storage_bytes() const {
  size_t b = 0;
  for (const auto& r : rows_) b += r.size() * sizeof(felem);
  for (const auto& c : coef_) b += c.size() * sizeof(felem);
  b += piv_.size() * sizeof(int);
  return b;
}

Span span_intersect(const Field& F, const Span& u, const Span& w) {
  if (u.ambient_dim() != w.ambient_dim())
    throw std::invalid_argument("subspace_intersect: ambient dims differ");
  int amb = u.ambient_dim();
  int du = u.dim(), dw = w.dim();
  int nr = du + dw;
  Span out(amb);
  if (du == 0 || dw == 0) return out;

  // kernel of the stacked basis system: coefficient vectors c with
  // sum_i c_i u_i + sum_j c_{du+j} w_j = 0; each kernel element gives
  // sum_i c_i u_i, a vector lying in both spans.
  std::vector<std::vector<felem>> m(nr);
  for (int i = 0; i < du; ++i) {
    m[i] = u.rows()[i];
    m[i].resize(amb + nr, 0);
    m[i][amb + i] = 1;
  }
  for (int j = 0; j < dw; ++j) {
    m[du + j] = w.rows()[j];
    m[du + j].resize(amb + nr, 0);
    m[du + j][amb + du + j] = 1;
  }

  int rank = 0;
  for (int col = 0; col < amb && rank < nr; ++col) {
    int piv = -1;
    for (int r = rank; r < nr; ++r) {
      if (m[r][col]) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    felem pv = F.inv(m[rank][col]);
    for (int j = col; j < amb + nr; ++j) m[rank][j] = F.mul(pv, m[rank][j]);
    for (int r = 0; r < nr; ++r) {
      if (r == rank) continue;
      felem f = m[r][col];
      if (!f) continue;
      for (int j = col; j < amb + nr; ++j)
        m[r][j] = F.sub(m[r][j], F.mul(f, m[rank][j]));
    }
    ++rank;
  }

  for (int r = rank; r < nr; ++r) {
    std::vector<felem> v(amb, 0);
    for (int i = 0; i < du; ++i) {
      felem c = m[r][amb + i];
      if (!c) continue;
      const auto& urow = u.rows()[i];
      for (int j = 0; j < amb; ++j)
        if (urow[j]) v[j] = F.add(v[j], F.mul(c, urow[j]));
    }
    out.insert(F, v);
  }
  return out;
}

std::optional<Mat> random_invertible_in(const Field& F, const Span& s, Rng& rng,
                                        int budget) {
  int amb = s.ambient_dim();
  int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(amb))));
  if (n * n != amb)
    throw std::invalid_argument("random_invertible_in: ambient dim not square");
  if (s.dim() == 0) return std::nullopt;
  for (int trial = 0; trial < budget; ++trial) {
    std::vector<felem> v(amb, 0);
    for (int r = 0; r < s.dim(); ++r) {
      felem c = static_cast<felem>(rng.below(F.q()));
      if (!c) continue;
      const auto& row = s.rows()[r];
      for (int j = 0; j < amb; ++j)
        if (row[j]) v[j] = F.add(v[j], F.mul(c, row[j]));
    }
    Mat cand = mat_unflatten(v, n);
    if (mat_inv(F, cand)) return cand;
  }
  return std::nullopt;
}

}  // namespace aelab
