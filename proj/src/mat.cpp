#include "mat.hpp"

#include <stdexcept>

namespace aelab {

Mat mat_eye(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat mat_mul(const Field& F, const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("mat_mul dimension mismatch");
  Mat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int t = 0; t < a.cols; ++t) {
      felem av = a.at(i, t);
      if (!av) continue;
      const felem* brow = &b.e[static_cast<size_t>(t) * b.cols];
      felem* crow = &c.e[static_cast<size_t>(i) * c.cols];
      for (int j = 0; j < b.cols; ++j) {
        if (brow[j]) crow[j] = F.add(crow[j], F.mul(av, brow[j]));
      }
    }
  }
  return c;
}

std::optional<Mat> mat_inv(const Field& F, const Mat& a) {
  if (a.rows != a.cols) throw std::invalid_argument("mat_inv requires square matrix");
  int n = a.rows;
  Mat m = a;
  Mat inv = mat_eye(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (m.at(r, col)) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return std::nullopt;  // singular
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(m.e[static_cast<size_t>(piv) * n + j], m.e[static_cast<size_t>(col) * n + j]);
        std::swap(inv.e[static_cast<size_t>(piv) * n + j], inv.e[static_cast<size_t>(col) * n + j]);
      }
    }
    felem pv = F.inv(m.at(col, col));
    for (int j = 0; j < n; ++j) {
      m.at(col, j) = F.mul(pv, m.at(col, j));
      inv.at(col, j) = F.mul(pv, inv.at(col, j));
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      felem f = m.at(r, col);
      if (!f) continue;
      for (int j = 0; j < n; ++j) {
        m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(col, j)));
        inv.at(r, j) = F.sub(inv.at(r, j), F.mul(f, inv.at(col, j)));
      }
    }
  }
  return inv;
}

bool mat_is_identity(const Mat& a) {
  if (a.rows != a.cols) return false;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (a.at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

void mat_axpy(const Field& F, Mat& r, felem c, const Mat& x) {
  if (r.rows != x.rows || r.cols != x.cols)
    throw std::invalid_argument("mat_axpy dimension mismatch");
  if (!c) return;
  for (size_t i = 0; i < r.e.size(); ++i)
    if (x.e[i]) r.e[i] = F.add(r.e[i], F.mul(c, x.e[i]));
}

std::vector<felem> mat_flatten(const Mat& a) { return a.e; }

Mat mat_unflatten(const std::vector<felem>& v, int n) {
  if (v.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("mat_unflatten length mismatch");
  Mat m(n, n);
  m.e = v;
  return m;
}

}  // namespace aelab
