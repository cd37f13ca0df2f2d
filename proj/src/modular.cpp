#include "foxcol/modular.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace foxcol {

i64 checked_add(i64 a, i64 b) {
  i64 out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer add overflow");
  return out;
}

i64 checked_sub(i64 a, i64 b) {
  i64 out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("integer sub overflow");
  return out;
}

i64 checked_mul(i64 a, i64 b) {
  i64 out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer mul overflow");
  return out;
}

u64 checked_mul_u64(u64 a, u64 b) {
  u64 out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("count overflow");
  return out;
}

i64 gcd_nonneg(i64 a, i64 b) {
  if (a < 0 || b < 0) throw DomainError("gcd expects non-negative arguments");
  return std::gcd(a, b);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

i64 smallest_prime_factor(i64 n) {
  if (n < 2) throw DomainError("smallest_prime_factor expects n >= 2");
  for (i64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

i64 least_common_prime_divisor(i64 l, i64 m) {
  if (l < 1 || m < 1) throw DomainError("least_common_prime_divisor expects positive arguments");
  i64 g = std::gcd(l, m);
  return g == 1 ? 1 : smallest_prime_factor(g);
}

IntegerMatrix::IntegerMatrix(int rows, int cols) : rows(rows), cols(cols) {
  if (rows < 0 || cols < 0) throw DomainError("matrix dimensions must be non-negative");
  e.assign(static_cast<std::size_t>(rows) * cols, 0);
}

IntegerMatrix IntegerMatrix::identity(int n) {
  IntegerMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntegerMatrix matmul(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols != b.rows) throw DomainError("matmul dimension mismatch");
  IntegerMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      i64 aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j)
        out.at(i, j) = checked_add(out.at(i, j), checked_mul(aik, b.at(k, j)));
    }
  return out;
}

u64 abs_determinant(IntegerMatrix m) {
  if (m.rows != m.cols) throw DomainError("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  i64 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        i64 num = checked_sub(checked_mul(m.at(i, j), m.at(k, k)),
                              checked_mul(m.at(i, k), m.at(k, j)));
        m.at(i, j) = num / prev;  // divides exactly in Bareiss elimination
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  i64 det = m.at(n - 1, n - 1);
  (void)sign;
  return det < 0 ? static_cast<u64>(-(det + 1)) + 1 : static_cast<u64>(det);
}

namespace {

struct SnfWork {
  IntegerMatrix a, u, v;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < a.cols; ++c) std::swap(a.at(i, c), a.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < a.rows; ++r) std::swap(a.at(r, i), a.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  // row i -= q * row k
  void row_sub(int i, int k, i64 q) {
    if (q == 0) return;
    for (int c = 0; c < a.cols; ++c)
      a.at(i, c) = checked_sub(a.at(i, c), checked_mul(q, a.at(k, c)));
    for (int c = 0; c < u.cols; ++c)
      u.at(i, c) = checked_sub(u.at(i, c), checked_mul(q, u.at(k, c)));
  }
  // col j -= q * col k
  void col_sub(int j, int k, i64 q) {
    if (q == 0) return;
    for (int r = 0; r < a.rows; ++r)
      a.at(r, j) = checked_sub(a.at(r, j), checked_mul(q, a.at(r, k)));
    for (int r = 0; r < v.rows; ++r)
      v.at(r, j) = checked_sub(v.at(r, j), checked_mul(q, v.at(r, k)));
  }
  void row_add(int i, int k) {
    for (int c = 0; c < a.cols; ++c) a.at(i, c) = checked_add(a.at(i, c), a.at(k, c));
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = checked_add(u.at(i, c), u.at(k, c));
  }
  void negate_row(int i) {
    for (int c = 0; c < a.cols; ++c) a.at(i, c) = checked_sub(0, a.at(i, c));
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = checked_sub(0, u.at(i, c));
  }
};

}  // namespace

SnfDecomposition smith_normal_form(const IntegerMatrix& m) {
  SnfWork w{m, IntegerMatrix::identity(m.rows), IntegerMatrix::identity(m.cols)};
  int steps = std::min(m.rows, m.cols);

  for (int t = 0; t < steps; ++t) {
    for (;;) {
      // Move the smallest-magnitude nonzero entry of the trailing block to
      // the pivot slot. Keeping the pivot small bounds growth elsewhere.
      int pi = -1, pj = -1;
      for (int i = t; i < m.rows; ++i)
        for (int j = t; j < m.cols; ++j)
          if (w.a.at(i, j) != 0 &&
              (pi < 0 || std::llabs(w.a.at(i, j)) < std::llabs(w.a.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        t = steps;  // trailing block is zero; done
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool dirty = false;
      for (int i = t + 1; i < m.rows; ++i) {
        w.row_sub(i, t, w.a.at(i, t) / w.a.at(t, t));
        if (w.a.at(i, t) != 0) dirty = true;  // remainder becomes a smaller pivot
      }
      for (int j = t + 1; j < m.cols; ++j) {
        w.col_sub(j, t, w.a.at(t, j) / w.a.at(t, t));
        if (w.a.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Pivot row and column are clear. Enforce divisibility of the rest of
      // the block by folding a bad row into the pivot row and repeating;
      // this is what makes d[i] | d[i+1] come out of the elimination.
      int bad = -1;
      for (int i = t + 1; i < m.rows && bad < 0; ++i)
        for (int j = t + 1; j < m.cols; ++j)
          if (w.a.at(i, j) % w.a.at(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      w.row_add(t, bad);
    }
    if (t >= steps) break;
    if (w.a.at(t, t) < 0) w.negate_row(t);
  }

  SnfDecomposition out;
  out.d.resize(steps);
  for (int i = 0; i < steps; ++i) {
    out.d[i] = w.a.at(i, i);
    if (out.d[i] != 0) out.rank = i + 1;
  }
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  return out;
}

u64 count_solutions_mod(const IntegerMatrix& m, i64 r) {
  if (r < 2) throw DomainError("modulus must be >= 2");
  SnfDecomposition snf = smith_normal_form(m);
  u64 count = 1;
  for (i64 d : snf.d) count = checked_mul_u64(count, static_cast<u64>(std::gcd(d, r)));
  for (int j = static_cast<int>(snf.d.size()); j < m.cols; ++j)
    count = checked_mul_u64(count, static_cast<u64>(r));
  return count;
}

SolutionStream::SolutionStream(const IntegerMatrix& m, i64 r) : cols_(m.cols), r_(r) {
  if (r < 2) throw DomainError("modulus must be >= 2");
  SnfDecomposition snf = smith_normal_form(m);

  // With u m v = diag(d) and x = v y, the system m x = 0 (mod r) becomes
  // d[i] y[i] = 0 (mod r): y[i] ranges over the gcd(d[i], r) multiples of
  // r / gcd(d[i], r), and coordinates past the diagonal are free.
  counts_.assign(cols_, 0);
  steps_.assign(cols_, 0);
  total_ = 1;
  for (int j = 0; j < cols_; ++j) {
    i64 g = j < static_cast<int>(snf.d.size()) ? std::gcd(snf.d[j], r) : r;
    counts_[j] = g;
    steps_[j] = r / g;
    total_ = checked_mul_u64(total_, static_cast<u64>(g));
  }
  odometer_.assign(cols_, 0);

  v_mod_ = snf.v;
  for (i64& x : v_mod_.e) x = ((x % r) + r) % r;
  if (total_ == 0) done_ = true;  // cols == 0 never reaches here; guard anyway
}

void SolutionStream::emit(std::vector<i64>& out) const {
  out.assign(cols_, 0);
  for (int j = 0; j < cols_; ++j) {
    i64 yj = (odometer_[j] * steps_[j]) % r_;
    if (yj == 0) continue;
    for (int i = 0; i < cols_; ++i)
      out[i] = (out[i] + v_mod_.at(i, j) * yj) % r_;
  }
}

bool SolutionStream::next(std::vector<i64>& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    emit(out);
    return true;
  }
  int j = cols_ - 1;
  while (j >= 0 && odometer_[j] + 1 == counts_[j]) {
    odometer_[j] = 0;
    --j;
  }
  if (j < 0) {
    done_ = true;
    return false;
  }
  ++odometer_[j];
  emit(out);
  return true;
}

SolutionStream enumerate_solutions_mod(const IntegerMatrix& m, i64 r, u64 cap) {
  SolutionStream s(m, r);
  if (s.total() > cap)
    throw BudgetExceeded("solution count " + std::to_string(s.total()) +
                             " exceeds cap " + std::to_string(cap),
                         s.total());
  return s;
}

}  // namespace foxcol
