#include "shl/exterior.hpp"

#include <cctype>
#include <sstream>

namespace shl {

namespace mask {

std::vector<Mask> degree_basis(int m, int k, Mask within) {
  std::vector<Mask> out;
  if (k < 0 || k > degree(within)) return out;
  Mask all = full(m) & within;
  // Enumerate submasks of `all` in increasing numeric order.
  for (Mask s = 0;; s = ((s | ~all) + 1) & all) {
    if (degree(s) == k) out.push_back(s);
    if (s == all) break;
  }
  return out;
}

std::vector<Mask> degree_basis(int m, int k) { return degree_basis(m, k, full(m)); }

}  // namespace mask

namespace {

// Sign and remainder of iota_{d_K} e^I; K must be a subset of I.
std::pair<int, Mask> contract_masks(Mask K, Mask I) {
  int sign = 1;
  Mask rem = I;
  for (Mask k = K; k;) {
    Mask low = k & (~k + 1);
    int idx = std::countr_zero(low) + 1;
    sign *= mask::removal_sign(rem, idx);
    rem &= ~low;
    k &= k - 1;
  }
  return {sign, rem};
}

}  // namespace

Form contract(const Multivector& X, const Form& xi, bool strict) {
  if (X.dim() != xi.dim()) fail(ErrorClass::model_invalid, "contract: ambient dimension mismatch");
  if (X.degree() > xi.degree() && !X.is_zero() && !xi.is_zero()) {
    if (strict) fail(ErrorClass::model_invalid, "contract: multivector degree exceeds form degree");
    return Form::zero(xi.dim(), 0);
  }
  Form out(xi.dim(), xi.degree() - X.degree());
  for (const auto& [K, cK] : X.terms()) {
    for (const auto& [I, cI] : xi.terms()) {
      if ((K & I) != K) continue;
      auto [sign, rem] = contract_masks(K, I);
      out.add_term(rem, cK * cI * sign);
    }
  }
  return out;
}

Rational pairing(const Multivector& X, const Form& xi) {
  if (X.degree() != xi.degree() && !X.is_zero() && !xi.is_zero())
    fail(ErrorClass::model_invalid, "pairing: degree mismatch");
  return contract(X, xi).coeff(0);
}

namespace {

void require_invertible(const QMatrix& A, int dim) {
  if (A.rows() != dim || A.cols() != dim) fail(ErrorClass::model_invalid, "linear map has wrong shape");
  if (A.rank() != dim) fail(ErrorClass::model_invalid, "linear map is singular");
}

template <Variance V>
Element<V> map_monomials(const Element<V>& x, const std::vector<Element<V>>& images) {
  Element<V> out(x.dim(), x.degree());
  for (const auto& [I, c] : x.terms()) {
    Element<V> prod = Element<V>::scalar(x.dim(), Rational(1));
    for (int idx : mask::indices(I)) prod = wedge(prod, images[idx - 1]);
    prod *= c;
    out += prod;
  }
  return out;
}

}  // namespace

Form pullback(const QMatrix& A, const Form& xi) {
  require_invertible(A, xi.dim());
  std::vector<Form> img;
  img.reserve(xi.dim());
  for (int i = 0; i < xi.dim(); ++i) {
    Form f(xi.dim(), 1);
    for (int j = 0; j < xi.dim(); ++j) f.add_term(mask::bit(j + 1), A.at(i, j));
    img.push_back(std::move(f));
  }
  return map_monomials(xi, img);
}

Multivector pushforward(const QMatrix& A, const Multivector& X) {
  require_invertible(A, X.dim());
  std::vector<Multivector> img;
  img.reserve(X.dim());
  for (int j = 0; j < X.dim(); ++j) {
    Multivector v(X.dim(), 1);
    for (int i = 0; i < X.dim(); ++i) v.add_term(mask::bit(i + 1), A.at(i, j));
    img.push_back(std::move(v));
  }
  return map_monomials(X, img);
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;
  int dim;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() { return s[pos]; }

  [[noreturn]] void bad(const std::string& why) {
    fail(ErrorClass::parse, "form literal: " + why + " at position " + std::to_string(pos));
  }

  std::string digits() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) bad("expected digits");
    return std::string(s.substr(start, pos - start));
  }

  Rational coefficient() {
    std::string num = digits();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      std::string den = digits();
      return parse_rational(num + "/" + den);
    }
    return parse_rational(num);
  }

  Mask basis_mask() {
    // "e{", indices, "}"
    if (pos >= s.size() || s[pos] != 'e') bad("expected 'e{'");
    ++pos;
    if (pos >= s.size() || s[pos] != '{') bad("expected '{' after 'e'");
    ++pos;
    Mask I = 0;
    int last = 0;
    skip_ws();
    if (pos < s.size() && s[pos] == '}') {
      ++pos;
      return I;
    }
    while (true) {
      skip_ws();
      std::string d = digits();
      if (d.size() > 2) bad("index " + d + " outside 1.." + std::to_string(dim));
      int idx = std::stoi(d);
      if (idx < 1 || idx > dim) bad("index " + d + " outside 1.." + std::to_string(dim));
      if (idx <= last) bad("indices must be strictly increasing");
      last = idx;
      I |= mask::bit(idx);
      skip_ws();
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == '}') {
        ++pos;
        return I;
      }
      bad("expected ',' or '}'");
    }
  }

  Form parse() {
    Form acc(dim, 0);
    bool first = true;
    bool have_degree = false;
    int degree = 0;
    while (!eof()) {
      skip_ws();
      int sign = 1;
      if (first) {
        if (peek() == '-') {
          sign = -1;
          ++pos;
        } else if (peek() == '+') {
          ++pos;
        }
      } else {
        if (peek() == '-') {
          sign = -1;
          ++pos;
        } else if (peek() == '+') {
          ++pos;
        } else {
          bad("expected '+' or '-' between terms");
        }
      }
      skip_ws();
      if (eof()) bad("dangling sign");
      Rational c(1);
      bool have_coeff = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c = coefficient();
        have_coeff = true;
      }
      skip_ws();
      Mask I = 0;
      bool have_basis = false;
      if (!eof() && peek() == 'e') {
        I = basis_mask();
        have_basis = true;
      }
      if (!have_coeff && !have_basis) bad("empty term");
      c *= sign;
      int term_degree = mask::degree(I);
      if (shl::is_zero(c)) {
        // explicit zero term fixes no degree
      } else {
        if (!have_degree) {
          have_degree = true;
          degree = term_degree;
          acc = Form(dim, degree);
        } else if (term_degree != degree) {
          bad("form literal must be homogeneous");
        }
        acc.add_term(I, c);
      }
      first = false;
    }
    if (first) bad("empty literal");
    return acc;
  }
};

template <Variance V>
std::string render(const Element<V>& x, const char* basis_symbol) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [I, c] : x.terms()) {
    Rational a = c;
    if (first) {
      if (sgn(a) < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    bool unit = (a == Rational(1));
    if (I == 0) {
      os << to_string(a);
    } else {
      if (!unit) os << to_string(a) << " ";
      os << basis_symbol << "{";
      bool comma = false;
      for (int idx : mask::indices(I)) {
        if (comma) os << ",";
        os << idx;
        comma = true;
      }
      os << "}";
    }
    first = false;
  }
  return os.str();
}

}  // namespace

Form parse_form(int dim, std::string_view text) {
  if (dim < 0 || dim > kMaxDim) fail(ErrorClass::parse, "ambient dimension out of range");
  Parser p{text, 0, dim};
  return p.parse();
}

std::string to_string(const Form& xi) { return render(xi, "e"); }
std::string to_string(const Multivector& X) { return render(X, "v"); }

}  // namespace shl
