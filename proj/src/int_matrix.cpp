#include "multicat/int_matrix.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace multicat {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<BigInt>& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ", ";
      out += (*this)(r, c).get_str();
    }
    out += "]";
  }
  return out + "]";
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t SnfResult::rank() const {
  std::size_t r = 0;
  while (r < std::min(S.rows(), S.cols()) && S(r, r) != 0) ++r;
  return r;
}

std::vector<BigInt> SnfResult::diagonal() const {
  std::vector<BigInt> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

namespace {

int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Row and column operations applied to S and mirrored into U (rows) and V
// (columns) so that U * A * V = S holds throughout.
class SnfWorkspace {
 public:
  explicit SnfWorkspace(const IntMatrix& a)
      : S(a), U(IntMatrix::identity(a.rows())), V(IntMatrix::identity(a.cols())) {}

  void swap_rows(std::size_t a, std::size_t b) {
    S.swap_rows(a, b);
    U.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    S.swap_cols(a, b);
    V.swap_cols(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
    S.add_row_multiple(dst, src, f);
    U.add_row_multiple(dst, src, f);
  }
  void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
    S.add_col_multiple(dst, src, f);
    V.add_col_multiple(dst, src, f);
  }
  void negate_row(std::size_t r) {
    S.negate_row(r);
    U.negate_row(r);
  }

  // Smallest nonzero |entry| in S[t.., t..].
  std::optional<std::pair<std::size_t, std::size_t>> min_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < S.rows(); ++i)
      for (std::size_t j = t; j < S.cols(); ++j) {
        if (S(i, j) == 0) continue;
        if (!best || cmpabs(S(i, j), S(best->first, best->second)) < 0) best = {{i, j}};
      }
    return best;
  }

  // Clears column t below and row t right of the pivot. Returns false if a
  // remainder survived and a smaller pivot was moved into place.
  bool eliminate(std::size_t t) {
    BigInt q;
    for (std::size_t i = t + 1; i < S.rows(); ++i) {
      if (S(i, t) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
      add_row(i, t, -q);
    }
    for (std::size_t j = t + 1; j < S.cols(); ++j) {
      if (S(t, j) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
      add_col(j, t, -q);
    }
    std::optional<std::size_t> row, col;
    for (std::size_t i = t + 1; i < S.rows(); ++i)
      if (S(i, t) != 0 && (!row || cmpabs(S(i, t), S(*row, t)) < 0)) row = i;
    for (std::size_t j = t + 1; j < S.cols(); ++j)
      if (S(t, j) != 0 && (!col || cmpabs(S(t, j), S(t, *col)) < 0)) col = j;
    if (!row && !col) return true;
    if (row && (!col || cmpabs(S(*row, t), S(t, *col)) <= 0)) {
      swap_rows(t, *row);
    } else {
      swap_cols(t, *col);
    }
    return false;
  }

  // Finds an entry of S[t+1.., t+1..] not divisible by the pivot and folds
  // its row into row t.
  bool enforce_divisibility(std::size_t t) {
    for (std::size_t i = t + 1; i < S.rows(); ++i)
      for (std::size_t j = t + 1; j < S.cols(); ++j)
        if (mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t()) == 0) {
          add_row(t, i, 1);
          return false;
        }
    return true;
  }

  IntMatrix S, U, V;
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  SnfWorkspace w(a);
  const std::size_t limit = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    const auto pivot = w.min_entry(t);
    if (!pivot) break;
    w.swap_rows(t, pivot->first);
    w.swap_cols(t, pivot->second);
    while (!w.eliminate(t) || !w.enforce_divisibility(t)) {
    }
    if (w.S(t, t) < 0) w.negate_row(t);
  }
  return {std::move(w.U), std::move(w.S), std::move(w.V)};
}

}  // namespace multicat
