#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "shl/errors.hpp"
#include "shl/linalg.hpp"
#include "shl/multi_index.hpp"
#include "shl/rational.hpp"

namespace shl {

enum class Variance { covariant, contravariant };

// Homogeneous element of the exterior algebra over Q^m (or its dual):
// a sparse map from strictly increasing multi-indices to exact rational
// coefficients. Zero coefficients are never stored, so equality is map
// equality. Values are immutable in practice: every operation returns a
// fresh element.
template <Variance V>
class Element {
 public:
  Element(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDim) fail(ErrorClass::parse, "ambient dimension out of range");
  }

  static Element zero(int dim, int degree) { return Element(dim, degree); }

  static Element unit_basis(int dim, Mask I) {
    Element e(dim, mask::degree(I));
    e.coeffs_.emplace(I, Rational(1));
    return e;
  }

  static Element scalar(int dim, const Rational& c) {
    Element e(dim, 0);
    if (!shl::is_zero(c)) e.coeffs_.emplace(Mask{0}, c);
    return e;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<Mask, Rational>& terms() const { return coeffs_; }

  Rational coeff(Mask I) const {
    auto it = coeffs_.find(I);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add_term(Mask I, const Rational& c) {
    if (shl::is_zero(c)) return;
    if (mask::degree(I) != degree_) fail(ErrorClass::internal, "term degree mismatch");
    if (I & ~mask::full(dim_)) fail(ErrorClass::internal, "index beyond ambient dimension");
    Rational canon = c;
    canon.canonicalize();  // guard against non-canonical caller input
    auto [it, inserted] = coeffs_.try_emplace(I, canon);
    if (!inserted) {
      it->second += canon;
      if (shl::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  Element& operator+=(const Element& o) {
    require_same_shape(o);
    for (const auto& [I, c] : o.coeffs_) add_term(I, c);
    return *this;
  }

  Element& operator-=(const Element& o) {
    require_same_shape(o);
    for (const auto& [I, c] : o.coeffs_) add_term(I, -c);
    return *this;
  }

  Element& operator*=(const Rational& c) {
    if (shl::is_zero(c)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [I, v] : coeffs_) v *= c;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend Element operator-(Element a) { return a *= Rational(-1); }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.dim_ != b.dim_) return false;
    if (a.coeffs_.empty() && b.coeffs_.empty()) return true;  // zeros of any degree agree
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  // Union of all stored multi-indices.
  Mask support() const {
    Mask s = 0;
    for (const auto& [I, c] : coeffs_) s |= I;
    return s;
  }

 private:
  void require_same_shape(const Element& o) const {
    if (dim_ != o.dim_) fail(ErrorClass::internal, "ambient dimension mismatch");
    if (!o.coeffs_.empty() && !coeffs_.empty() && degree_ != o.degree_)
      fail(ErrorClass::internal, "degree mismatch");
  }

  int dim_;
  int degree_;
  std::map<Mask, Rational> coeffs_;
};

using Form = Element<Variance::covariant>;
using Multivector = Element<Variance::contravariant>;

template <Variance V>
Element<V> wedge(const Element<V>& a, const Element<V>& b) {
  if (a.dim() != b.dim()) fail(ErrorClass::model_invalid, "wedge: ambient dimension mismatch");
  Element<V> out(a.dim(), a.degree() + b.degree());
  for (const auto& [I, ca] : a.terms()) {
    for (const auto& [J, cb] : b.terms()) {
      if (I & J) continue;
      out.add_term(I | J, ca * cb * mask::wedge_sign(I, J));
    }
  }
  return out;
}

// Contraction (interior product) of a multivector into a form. For a
// decomposable X = v_1 ^ ... ^ v_k the leading factor acts innermost:
// iota_X = iota_{v_k} o ... o iota_{v_1}. With this order the pairing of
// the standard bases is the identity matrix.
Form contract(const Multivector& X, const Form& xi, bool strict = false);

// Full contraction of equal degrees; realizes the nondegenerate pairing.
Rational pairing(const Multivector& X, const Form& xi);

// Pullback of a form along the linear map with matrix A (column j of A
// is the image of the j-th basis vector). Acts on 1-forms by e^i -> sum_j A[i][j] e^j
// and extends as an algebra homomorphism. A must be invertible.
Form pullback(const QMatrix& A, const Form& xi);

// Pushforward of a multivector: basis vectors map to the columns of A.
Multivector pushforward(const QMatrix& A, const Multivector& X);

// Form literal syntax, e.g. "3/2 e{1,3} - e{2,4}" (see README for the grammar).
Form parse_form(int dim, std::string_view text);
std::string to_string(const Form& xi);
std::string to_string(const Multivector& X);

}  // namespace shl
