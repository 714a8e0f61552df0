#include "emult.hpp"

#include <cstdlib>
#include <stdexcept>

namespace aelab {

TValues::TValues(std::vector<felem> v) : values(std::move(v)) {
  if (values.empty()) throw std::invalid_argument("t-values: empty");
  for (felem x : values)
    if (x == 0) throw std::invalid_argument("t-values must be nonzero");
}

EMultPair emult_identity(int n) { return EMultPair{mat_eye(n), perm_identity(n)}; }

Mat cb_step_matrix(const Field& F, int i, int sign, const TValues& t,
                   const Perm& sigma) {
  int n = t.n();
  if (i < 1 || i > n - 1) throw std::out_of_range("cb_step_matrix: generator index");
  if (sigma.n() != n) throw std::invalid_argument("cb_step_matrix: size mismatch");
  Perm sinv = perm_inverse(sigma);
  Mat M = mat_eye(n);
  int ii = i - 1;  // 0-based row/column of the diagonal entry
  if (sign > 0) {
    felem tv = t.values[sinv.img[ii]];
    if (ii >= 1) M.at(ii, ii - 1) = tv;
    M.at(ii, ii) = F.neg(tv);
    M.at(ii, ii + 1) = 1;
  } else {
    felem u = F.inv(t.values[sinv.img[ii + 1]]);
    if (ii >= 1) M.at(ii, ii - 1) = 1;
    M.at(ii, ii) = F.neg(u);
    M.at(ii, ii + 1) = u;
  }
  return M;
}

EMultPair emult(const Field& F, const EMultPair& start, const Braid& w,
                const TValues& t) {
  int n = t.n();
  if (start.perm.n() != n || start.matrix.rows != n || start.matrix.cols != n)
    throw std::invalid_argument("emult: size mismatch");
  if (w.n != n) throw std::invalid_argument("emult: strand count mismatch");
  Mat M = start.matrix;
  std::vector<int32_t> s = start.perm.img;
  std::vector<int32_t> sinv = perm_inverse(start.perm).img;
  for (int32_t l : w.letters) {
    int ii = std::abs(l) - 1;
    // right-multiply by the step matrix: identity outside row ii, so only
    // columns ii-1, ii, ii+1 of M change, each a multiple of column ii
    if (l > 0) {
      felem tv = t.values[sinv[ii]];
      for (int r = 0; r < n; ++r) {
        felem mi = M.at(r, ii);
        if (mi == 0) continue;
        felem tm = F.mul(tv, mi);
        if (ii >= 1) M.at(r, ii - 1) = F.add(M.at(r, ii - 1), tm);
        M.at(r, ii) = F.neg(tm);
        M.at(r, ii + 1) = F.add(M.at(r, ii + 1), mi);
      }
    } else {
      felem u = F.inv(t.values[sinv[ii + 1]]);
      for (int r = 0; r < n; ++r) {
        felem mi = M.at(r, ii);
        if (mi == 0) continue;
        felem um = F.mul(u, mi);
        if (ii >= 1) M.at(r, ii - 1) = F.add(M.at(r, ii - 1), mi);
        M.at(r, ii) = F.neg(um);
        M.at(r, ii + 1) = F.add(M.at(r, ii + 1), um);
      }
    }
    // compose the running permutation with (ii, ii+1) on the right
    int32_t x1 = sinv[ii], x2 = sinv[ii + 1];
    s[x1] = ii + 1;
    s[x2] = ii;
    sinv[ii] = x2;
    sinv[ii + 1] = x1;
  }
  return EMultPair{std::move(M), Perm{std::move(s)}};
}

bool braid_relation_check(const Field& F, const TValues& t, int i) {
  int n = t.n();
  if (i < 1 || i > n - 2) throw std::out_of_range("braid_relation_check: index");
  EMultPair id = emult_identity(n);
  Braid lhs{n, {i, i + 1, i}};
  Braid rhs{n, {i + 1, i, i + 1}};
  if (!(emult(F, id, lhs, t) == emult(F, id, rhs, t))) return false;
  for (int j = 1; j <= n - 1; ++j) {
    if (std::abs(i - j) < 2) continue;
    Braid uv{n, {i, j}};
    Braid vu{n, {j, i}};
    if (!(emult(F, id, uv, t) == emult(F, id, vu, t))) return false;
  }
  return true;
}

}  // namespace aelab
