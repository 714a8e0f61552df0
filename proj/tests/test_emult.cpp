#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <stdexcept>

#include "emult.hpp"
#include "rng.hpp"

using namespace aelab;

namespace {

TValues rand_tvals(const Field& F, int n, Rng& rng) {
  std::vector<felem> v(n);
  for (felem& x : v) x = static_cast<felem>(1 + rng.below(F.q() - 1));
  return TValues(v);
}

Braid rand_braid(int n, int len, Rng& rng) {
  std::vector<int> alpha;
  for (int i = 1; i <= n - 1; ++i) alpha.push_back(i);
  return random_word(n, len, alpha, rng);
}

EMultPair rand_pair(const Field& F, int n, Rng& rng) {
  Mat m(n, n);
  for (felem& x : m.e) x = static_cast<felem>(rng.below(F.q()));
  Perm s = perm_identity(n);
  rng.shuffle(s.img);
  return EMultPair{m, s};
}

// Step-matrix builder written straight from the definition, independent of
// the fold in emult(): the whole matrix is assembled and multiplied.
Mat step_from_definition(const Field& F, int n, int i, int sign,
                         const TValues& t, const Perm& sigma) {
  Perm sinv = perm_inverse(sigma);
  int ii = i - 1;  // 0-based row/column
  Mat m = mat_eye(n);
  if (sign > 0) {
    felem tv = t.values[sinv.img[ii]];
    if (ii > 0) m.at(ii, ii - 1) = tv;
    m.at(ii, ii) = F.neg(tv);
    m.at(ii, ii + 1) = 1;
  } else {
    felem u = F.inv(t.values[sinv.img[ii + 1]]);
    if (ii > 0) m.at(ii, ii - 1) = 1;
    m.at(ii, ii) = F.neg(u);
    m.at(ii, ii + 1) = u;
  }
  return m;
}

// Full-matrix-product oracle for the fold.
EMultPair emult_oracle(const Field& F, EMultPair p, const Braid& w,
                       const TValues& t) {
  for (int32_t l : w.letters) {
    int i = std::abs(l);
    int sign = l > 0 ? 1 : -1;
    p.matrix = mat_mul(F, p.matrix, step_from_definition(F, p.matrix.rows, i,
                                                         sign, t, p.perm));
    p.perm = perm_compose(p.perm, perm_transposition(p.perm.n(), i));
  }
  return p;
}

}  // namespace

TEST_CASE("t-value validation") {
  CHECK_THROWS_AS(TValues(std::vector<felem>{}), std::invalid_argument);
  CHECK_THROWS_AS(TValues(std::vector<felem>{1, 0, 3}), std::invalid_argument);
  CHECK_NOTHROW(TValues(std::vector<felem>{1, 2, 3}));
  CHECK(TValues(std::vector<felem>{1, 2, 3}).n() == 3);
}

TEST_CASE("step matrix bounds") {
  Field F = Field::with_default_poly(2, 5);
  TValues t(std::vector<felem>{2, 3, 19, 11, 7});
  Perm id = perm_identity(5);
  CHECK_THROWS_AS(cb_step_matrix(F, 0, 1, t, id), std::out_of_range);
  CHECK_THROWS_AS(cb_step_matrix(F, 5, 1, t, id), std::out_of_range);
  CHECK_NOTHROW(cb_step_matrix(F, 4, -1, t, id));
}

TEST_CASE("step matrix matches the definition") {
  Field F = Field::with_default_poly(2, 5);
  Rng rng(derive_seed(21, "emult-step"));
  for (int it = 0; it < 100; ++it) {
    int n = 5 + static_cast<int>(rng.below(4));
    TValues t = rand_tvals(F, n, rng);
    Perm s = perm_identity(n);
    rng.shuffle(s.img);
    int i = 1 + static_cast<int>(rng.below(n - 1));
    int sign = rng.sign();
    CHECK(cb_step_matrix(F, i, sign, t, s) ==
          step_from_definition(F, n, i, sign, t, s));
  }
}

TEST_CASE("fold fixture at n=5") {
  Field F = Field::with_default_poly(2, 5);
  TValues t(std::vector<felem>{2, 3, 19, 11, 7});
  Braid w{5, {1, -2, 3, 4, -1, 2}};
  EMultPair p = emult(F, emult_identity(5), w, t);
  const felem want[5][5] = {{0x02, 0x00, 0x00, 0x1f, 0x1d},
                            {0x19, 0x04, 0x1f, 0x1f, 0x1d},
                            {0x06, 0x06, 0x02, 0x02, 0x01},
                            {0x00, 0x00, 0x02, 0x02, 0x01},
                            {0x00, 0x00, 0x00, 0x00, 0x01}};
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) CHECK(p.matrix.at(r, c) == want[r][c]);
  CHECK(p.perm.img == std::vector<int32_t>{4, 2, 0, 1, 3});
  // folding the inverse word undoes it
  CHECK(emult(F, p, braid_inverse(w), t) == emult_identity(5));
}

TEST_CASE("fold equals the matrix-product oracle") {
  Field F = Field::with_default_poly(2, 5);
  Field F7 = Field::with_default_poly(7, 1);
  Rng rng(derive_seed(22, "emult-oracle"));
  for (int it = 0; it < 100; ++it) {
    const Field& K = (it % 2 == 0) ? F : F7;
    int n = 5 + static_cast<int>(rng.below(4));
    TValues t = rand_tvals(K, n, rng);
    EMultPair start = rand_pair(K, n, rng);
    Braid w = rand_braid(n, 16, rng);
    CHECK(emult(K, start, w, t) == emult_oracle(K, start, w, t));
  }
}

TEST_CASE("identity word and size validation") {
  Field F = Field::with_default_poly(2, 5);
  Rng rng(derive_seed(23, "emult-id"));
  TValues t = rand_tvals(F, 6, rng);
  EMultPair start = rand_pair(F, 6, rng);
  CHECK(emult(F, start, Braid{6, {}}, t) == start);
  CHECK_THROWS_AS(emult(F, start, Braid{5, {1}}, t), std::invalid_argument);
  TValues t5 = rand_tvals(F, 5, rng);
  CHECK_THROWS_AS(emult(F, start, Braid{6, {1}}, t5), std::invalid_argument);
}

TEST_CASE("braid relations hold for random t-values") {
  Field F = Field::with_default_poly(2, 5);
  Field F7 = Field::with_default_poly(7, 1);
  Rng rng(derive_seed(24, "emult-rel"));
  for (int n = 3; n <= 8; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      TValues t = rand_tvals(F, n, rng);
      TValues t7 = rand_tvals(F7, n, rng);
      for (int i = 1; i <= n - 2; ++i) {
        CHECK(braid_relation_check(F, t, i));
        CHECK(braid_relation_check(F7, t7, i));
      }
    }
  }
}

TEST_CASE("homomorphism and cancellation properties") {
  Field F = Field::with_default_poly(2, 5);
  Rng rng(derive_seed(25, "emult-hom"));
  int n = 6;
  for (int it = 0; it < 2000; ++it) {
    TValues t = rand_tvals(F, n, rng);
    EMultPair start = rand_pair(F, n, rng);
    Braid u = rand_braid(n, 10, rng);
    Braid v = rand_braid(n, 10, rng);
    CHECK(emult(F, start, braid_concat(u, v), t) ==
          emult(F, emult(F, start, u, t), v, t));
    CHECK(emult(F, start, braid_concat(u, braid_inverse(u)), t) == start);
    // free reduction cannot change the action
    CHECK(emult(F, start, free_reduce(braid_concat(u, v)), t) ==
          emult(F, start, braid_concat(u, v), t));
  }
}

TEST_CASE("permutation component is the word's permutation") {
  Field F = Field::with_default_poly(2, 5);
  Rng rng(derive_seed(26, "emult-perm"));
  for (int it = 0; it < 100; ++it) {
    int n = 5 + static_cast<int>(rng.below(4));
    TValues t = rand_tvals(F, n, rng);
    EMultPair start = rand_pair(F, n, rng);
    Braid w = rand_braid(n, 14, rng);
    CHECK(emult(F, start, w, t).perm ==
          perm_compose(start.perm, permutation_of(w)));
  }
}

// --- negative controls: the twist convention and the signs both matter ---

namespace {

// Deliberately wrong twist: reads the t-value through sigma's image instead
// of its inverse.
Mat step_image_twist(const Field& F, int n, int i, int sign, const TValues& t,
                     const Perm& sigma) {
  int ii = i - 1;
  Mat m = mat_eye(n);
  if (sign > 0) {
    felem tv = t.values[sigma.img[ii]];
    if (ii > 0) m.at(ii, ii - 1) = tv;
    m.at(ii, ii) = F.neg(tv);
    m.at(ii, ii + 1) = 1;
  } else {
    felem u = F.inv(t.values[sigma.img[ii + 1]]);
    if (ii > 0) m.at(ii, ii - 1) = 1;
    m.at(ii, ii) = F.neg(u);
    m.at(ii, ii + 1) = u;
  }
  return m;
}

// Deliberately wrong sign: drops the negation on the diagonal entry.
Mat step_unsigned(const Field& F, int n, int i, const TValues& t,
                  const Perm& sigma) {
  Perm sinv = perm_inverse(sigma);
  int ii = i - 1;
  Mat m = mat_eye(n);
  felem tv = t.values[sinv.img[ii]];
  if (ii > 0) m.at(ii, ii - 1) = tv;
  m.at(ii, ii) = tv;  // should be -tv
  m.at(ii, ii + 1) = 1;
  return m;
}

template <typename StepFn>
EMultPair fold_with(const Field& F, int n, const Braid& w, const TValues& t,
                    StepFn step) {
  EMultPair p = emult_identity(n);
  for (int32_t l : w.letters) {
    int i = std::abs(l);
    int sign = l > 0 ? 1 : -1;
    p.matrix = mat_mul(F, p.matrix, step(F, n, i, sign, t, p.perm));
    p.perm = perm_compose(p.perm, perm_transposition(n, i));
  }
  return p;
}

}  // namespace

TEST_CASE("negative control: image-side twist breaks the braid relation") {
  Field F = Field::with_default_poly(2, 5);
  Rng rng(derive_seed(27, "emult-neg1"));
  int n = 5, i = 2;
  Braid lhs{n, {i, i + 1, i}};
  Braid rhs{n, {i + 1, i, i + 1}};
  int broken = 0, intact = 0;
  for (int rep = 0; rep < 20; ++rep) {
    TValues t = rand_tvals(F, n, rng);
    auto wrong = [](const Field& K, int nn, int j, int sign, const TValues& tt,
                    const Perm& s) { return step_image_twist(K, nn, j, sign, tt, s); };
    if (!(fold_with(F, n, lhs, t, wrong) == fold_with(F, n, rhs, t, wrong)))
      ++broken;
    // the real fold keeps the relation on the same inputs
    if (emult(F, emult_identity(n), lhs, t) ==
        emult(F, emult_identity(n), rhs, t))
      ++intact;
  }
  CHECK(broken > 0);
  CHECK(intact == 20);
}

TEST_CASE("negative control: dropped sign breaks the braid relation") {
  // char 2 hides sign errors, so this control runs over GF(7)
  Field F = Field::with_default_poly(7, 1);
  Rng rng(derive_seed(28, "emult-neg2"));
  int n = 5, i = 2;
  Braid lhs{n, {i, i + 1, i}};
  Braid rhs{n, {i + 1, i, i + 1}};
  int broken = 0;
  for (int rep = 0; rep < 20; ++rep) {
    TValues t = rand_tvals(F, n, rng);
    auto wrong = [](const Field& K, int nn, int j, int /*sign*/,
                    const TValues& tt, const Perm& s) {
      return step_unsigned(K, nn, j, tt, s);
    };
    if (!(fold_with(F, n, lhs, t, wrong) == fold_with(F, n, rhs, t, wrong)))
      ++broken;
  }
  CHECK(broken > 0);
}
