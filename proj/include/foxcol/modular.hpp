#pragma once

#include <cstdint>
#include <vector>

#include "foxcol/errors.hpp"

namespace foxcol {

using i64 = long long;
using u64 = unsigned long long;

// Overflow-checked integer helpers. All matrix arithmetic in this module
// goes through these so an out-of-range intermediate raises instead of
// wrapping.
i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
u64 checked_mul_u64(u64 a, u64 b);

// gcd of two non-negative integers, gcd(0,0) = 0. Negative input is a
// domain error.
i64 gcd_nonneg(i64 a, i64 b);

bool is_prime(i64 n);
i64 smallest_prime_factor(i64 n);  // n >= 2

// <l, m>: 1 when l, m are coprime, otherwise the least prime dividing
// gcd(l, m). Both arguments must be >= 1.
i64 least_common_prime_divisor(i64 l, i64 m);

// Dense integer matrix, row-major.
struct IntegerMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<i64> e;

  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols);
  static IntegerMatrix identity(int n);

  i64& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
  i64 at(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }

  bool operator==(const IntegerMatrix&) const = default;
};

IntegerMatrix matmul(const IntegerMatrix& a, const IntegerMatrix& b);

// |det| of a square matrix, by fraction-free (Bareiss) elimination.
u64 abs_determinant(IntegerMatrix m);

// u * m * v = diag(d), u and v unimodular, d[i] >= 0, d[i] | d[i+1].
// d has min(rows, cols) entries; zeros sit at the end.
struct SnfDecomposition {
  std::vector<i64> d;
  IntegerMatrix u;  // rows x rows
  IntegerMatrix v;  // cols x cols
  int rank = 0;     // number of nonzero diagonal entries
};

SnfDecomposition smith_normal_form(const IntegerMatrix& m);

// Number of x in (Z/r)^cols with m x = 0 (mod r). r >= 2.
u64 count_solutions_mod(const IntegerMatrix& m, i64 r);

// Lazy enumeration of the same solution set, in lexicographic order of the
// kernel parameterization coordinates. Single consumer.
class SolutionStream {
 public:
  SolutionStream(const IntegerMatrix& m, i64 r);

  u64 total() const { return total_; }
  int dimension() const { return cols_; }

  // Writes the next solution into `out` (resized to cols). Returns false
  // once exhausted.
  bool next(std::vector<i64>& out);

 private:
  int cols_;
  i64 r_;
  u64 total_;
  bool done_ = false;
  bool started_ = false;
  std::vector<i64> counts_;    // number of values per coordinate
  std::vector<i64> steps_;     // value stride per coordinate
  std::vector<i64> odometer_;  // current index per coordinate
  IntegerMatrix v_mod_;        // kernel basis, reduced mod r
  void emit(std::vector<i64>& out) const;
};

// As SolutionStream, but raises BudgetExceeded (carrying the true count)
// when the solution count is larger than `cap`.
SolutionStream enumerate_solutions_mod(const IntegerMatrix& m, i64 r, u64 cap);

}  // namespace foxcol
