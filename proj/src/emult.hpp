#pragma once
// Evaluated colored Burau representation and E-multiplication: the right
// action of braid words on GL_N(F_q) x S_N. No symbolic rational functions
// anywhere; every step evaluates variables at concrete t-values and touches
// only three columns of the running matrix (O(N) field mults per letter).

#include "braid.hpp"
#include "gf.hpp"
#include "mat.hpp"
#include "perm.hpp"

namespace aelab {

struct TValues {
  std::vector<felem> values;  // tau_1..tau_N, all nonzero

  TValues() = default;
  explicit TValues(std::vector<felem> v);  // throws on empty or zero entry
  int n() const { return static_cast<int>(values.size()); }
};

struct EMultPair {
  Mat matrix;
  Perm perm;

  bool operator==(const EMultPair& o) const {
    return matrix == o.matrix && perm == o.perm;
  }
};

EMultPair emult_identity(int n);

// The matrix of b_i^{sign} with each variable t_j evaluated at
// tau_{sigma^{-1}(j)} — the t-value colored onto the strand currently at
// position j under the accumulated permutation. Row i (1-based) of the
// positive matrix is (t, -t, 1) at columns i-1, i, i+1 (column i-1 absent
// when i = 1); the negative matrix's row i is (1, -u, u) with u the inverse
// of the (i+1)-th permuted t-value.
Mat cb_step_matrix(const Field& F, int i, int sign, const TValues& t,
                   const Perm& sigma);

// Left-to-right fold: for each letter, right-multiply the running matrix by
// cb_step_matrix at the running permutation, then compose the permutation
// with the letter's transposition.
EMultPair emult(const Field& F, const EMultPair& start, const Braid& w,
                const TValues& t);

// true iff the defining relations survive evaluation: the adjacent relation
// at (i, i+1) and far commutation against every j with |i-j| >= 2.
bool braid_relation_check(const Field& F, const TValues& t, int i);

}  // namespace aelab
