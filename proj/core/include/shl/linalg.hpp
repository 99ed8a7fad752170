#pragma once

#include <optional>
#include <span>
#include <vector>

#include "shl/rational.hpp"

namespace shl {

class QMatrix;
struct Echelon;

// Dense matrix over the rationals. All elimination is deterministic:
// columns are scanned left to right and the first row with a nonzero
// entry becomes the pivot, so kernels, solutions and reduced forms are
// reproducible across platforms.
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static QMatrix identity(int n);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static QMatrix vstack(const QMatrix& top, const QMatrix& bottom);
  static QMatrix hstack(const QMatrix& left, const QMatrix& right);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  QMatrix transposed() const;
  std::vector<Rational> row(int i) const;
  std::vector<Rational> column(int j) const;
  void set_column(int j, const std::vector<Rational>& v);

  std::vector<Rational> apply(std::span<const Rational> x) const;  // this * x

  Echelon echelon() const;

  int rank() const;
  bool is_zero() const;
  bool is_identity() const;

  // Columns form a canonical kernel basis (free variable set to 1,
  // pivots filled from the reduced form; free columns ascending).
  QMatrix kernel() const;

  // Any particular solution of this * x = b with free variables set to
  // zero ("minimal pivot" choice); nullopt when inconsistent.
  std::optional<std::vector<Rational>> solve(std::span<const Rational> b) const;

  std::optional<QMatrix> inverse() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

 private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

struct Echelon {
  QMatrix rref;
  std::vector<int> pivot_cols;
  int rank = 0;
};

inline bool vec_is_zero(std::span<const Rational> v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

std::vector<Rational> vec_sub(std::span<const Rational> a, std::span<const Rational> b);
std::vector<Rational> vec_add(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace shl
