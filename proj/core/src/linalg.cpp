#include "shl/linalg.hpp"

#include "shl/errors.hpp"

namespace shl {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return QMatrix(0, 0);
  QMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols()) fail(ErrorClass::internal, "ragged matrix rows");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::vstack(const QMatrix& top, const QMatrix& bottom) {
  if (top.cols() != bottom.cols() && top.rows() != 0 && bottom.rows() != 0)
    fail(ErrorClass::internal, "vstack: column mismatch");
  int cols = top.rows() != 0 ? top.cols() : bottom.cols();
  QMatrix m(top.rows() + bottom.rows(), cols);
  for (int i = 0; i < top.rows(); ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = top.at(i, j);
  for (int i = 0; i < bottom.rows(); ++i)
    for (int j = 0; j < cols; ++j) m.at(top.rows() + i, j) = bottom.at(i, j);
  return m;
}

QMatrix QMatrix::hstack(const QMatrix& left, const QMatrix& right) {
  if (left.rows() != right.rows()) fail(ErrorClass::internal, "hstack: row mismatch");
  QMatrix m(left.rows(), left.cols() + right.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < left.cols(); ++j) m.at(i, j) = left.at(i, j);
    for (int j = 0; j < right.cols(); ++j) m.at(i, left.cols() + j) = right.at(i, j);
  }
  return m;
}

QMatrix QMatrix::transposed() const {
  QMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

std::vector<Rational> QMatrix::row(int i) const {
  std::vector<Rational> v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

std::vector<Rational> QMatrix::column(int j) const {
  std::vector<Rational> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void QMatrix::set_column(int j, const std::vector<Rational>& v) {
  for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

std::vector<Rational> QMatrix::apply(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != cols_) fail(ErrorClass::internal, "apply: size mismatch");
  std::vector<Rational> y(rows_);
  for (int i = 0; i < rows_; ++i) {
    Rational acc = 0;
    for (int j = 0; j < cols_; ++j)
      if (!shl::is_zero(at(i, j)) && !shl::is_zero(x[j])) acc += at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

Echelon QMatrix::echelon() const {
  Echelon e;
  e.rref = *this;
  QMatrix& m = e.rref;
  int r = 0;
  for (int col = 0; col < cols_ && r < rows_; ++col) {
    int piv = -1;
    for (int i = r; i < rows_; ++i) {
      if (!shl::is_zero(m.at(i, col))) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(r, j));
    Rational inv = 1 / m.at(r, col);
    for (int j = col; j < cols_; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || shl::is_zero(m.at(i, col))) continue;
      Rational f = m.at(i, col);
      for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    e.pivot_cols.push_back(col);
    ++r;
  }
  e.rank = r;
  return e;
}

int QMatrix::rank() const { return echelon().rank; }

bool QMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!shl::is_zero(x)) return false;
  return true;
}

bool QMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != Rational(i == j ? 1 : 0)) return false;
  return true;
}

QMatrix QMatrix::kernel() const {
  Echelon e = echelon();
  std::vector<bool> is_piv(cols_, false);
  for (int c : e.pivot_cols) is_piv[c] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < cols_; ++j)
    if (!is_piv[j]) free_cols.push_back(j);
  QMatrix k(cols_, static_cast<int>(free_cols.size()));
  for (int idx = 0; idx < static_cast<int>(free_cols.size()); ++idx) {
    int f = free_cols[idx];
    k.at(f, idx) = 1;
    for (int r = 0; r < e.rank; ++r) k.at(e.pivot_cols[r], idx) = -e.rref.at(r, f);
  }
  return k;
}

std::optional<std::vector<Rational>> QMatrix::solve(std::span<const Rational> b) const {
  if (static_cast<int>(b.size()) != rows_) fail(ErrorClass::internal, "solve: rhs size mismatch");
  QMatrix aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  Echelon e = aug.echelon();
  for (int c : e.pivot_cols)
    if (c == cols_) return std::nullopt;
  std::vector<Rational> x(cols_, Rational(0));
  for (int r = 0; r < e.rank; ++r) x[e.pivot_cols[r]] = e.rref.at(r, cols_);
  return x;
}

std::optional<QMatrix> QMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  QMatrix aug = hstack(*this, identity(rows_));
  Echelon e = aug.echelon();
  if (e.rank != rows_) return std::nullopt;
  for (int r = 0; r < e.rank; ++r)
    if (e.pivot_cols[r] != r) return std::nullopt;
  QMatrix inv(rows_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rows_; ++j) inv.at(i, j) = e.rref.at(i, rows_ + j);
  return inv;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorClass::internal, "matmul: shape mismatch");
  QMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      if (shl::is_zero(a.at(i, k))) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (shl::is_zero(b.at(k, j))) continue;
        c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  }
  return c;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::vector<Rational> vec_sub(std::span<const Rational> a, std::span<const Rational> b) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::vector<Rational> vec_add(std::span<const Rational> a, std::span<const Rational> b) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace shl
