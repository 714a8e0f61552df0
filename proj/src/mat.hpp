#pragma once
// Dense matrices over a Field, row-major. Flattening order for
// matrix-as-vector views is row-major everywhere (span reproducibility
// depends on it).

#include <optional>
#include <vector>

#include "gf.hpp"

namespace aelab {

struct Mat {
  int rows = 0, cols = 0;
  std::vector<felem> e;  // row-major

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c, 0) {}

  felem& at(int r, int c) { return e[static_cast<size_t>(r) * cols + c]; }
  felem at(int r, int c) const { return e[static_cast<size_t>(r) * cols + c]; }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && e == o.e;
  }
};

Mat mat_eye(int n);
Mat mat_mul(const Field& F, const Mat& a, const Mat& b);
// Gauss-Jordan; singular is a normal outcome (Stage 2 retries on it).
std::optional<Mat> mat_inv(const Field& F, const Mat& a);
bool mat_is_identity(const Mat& a);

// r += c * x, entry-wise over flattened views
void mat_axpy(const Field& F, Mat& r, felem c, const Mat& x);

std::vector<felem> mat_flatten(const Mat& a);
Mat mat_unflatten(const std::vector<felem>& v, int n);

}  // namespace aelab
