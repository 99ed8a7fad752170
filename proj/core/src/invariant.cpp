#include "shl/invariant.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace shl {

namespace {

std::string matrix_key(const QMatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) os << m.at(i, j).get_str() << ";";
  return os.str();
}

}  // namespace

GroupAction close_group(const std::vector<QMatrix>& generators, std::size_t max_elements) {
  GroupAction G;
  G.generators = generators;
  int dim = generators.empty() ? 0 : generators[0].rows();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const QMatrix& g = generators[i];
    if (g.rows() != g.cols() || (dim && g.rows() != dim))
      fail(ErrorClass::group_invalid, "group generators must be square matrices of equal size");
    if (g.rank() != g.rows())
      fail(ErrorClass::group_invalid, "group generator " + std::to_string(i + 1) + " is singular");
  }
  if (dim == 0) dim = 1;

  std::set<std::string> seen;
  std::deque<QMatrix> queue;
  QMatrix id = QMatrix::identity(dim);
  seen.insert(matrix_key(id));
  G.elements.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    QMatrix cur = queue.front();
    queue.pop_front();
    for (const QMatrix& g : G.generators) {
      QMatrix next = cur * g;
      std::string key = matrix_key(next);
      if (seen.count(key)) continue;
      if (G.elements.size() >= max_elements)
        fail(ErrorClass::group_invalid,
             "group closure exceeds " + std::to_string(max_elements) + " elements (infinite or too large)");
      seen.insert(std::move(key));
      G.elements.push_back(next);
      queue.push_back(std::move(next));
    }
  }
  return G;
}

Form reynolds(const GroupAction& G, const Form& xi) {
  if (G.elements.empty()) fail(ErrorClass::group_invalid, "group action has no elements");
  Form acc(xi.dim(), xi.degree());
  for (const QMatrix& g : G.elements) acc += pullback(g, xi);
  acc *= Rational(1) / Rational(static_cast<long>(G.elements.size()));
  return acc;
}

void require_automorphisms(const ComplexModel& model, const GroupAction& G) {
  for (std::size_t gi = 0; gi < G.generators.size(); ++gi) {
    const QMatrix& g = G.generators[gi];
    if (g.rows() != model.dim())
      fail(ErrorClass::group_invalid, "group matrices do not match the model dimension");
    for (int k = 1; k <= model.dim(); ++k) {
      Form e = Form::unit_basis(model.dim(), mask::bit(k));
      if (!(model.differential(pullback(g, e)) == pullback(g, model.differential(e))))
        fail(ErrorClass::group_invalid,
             "generator " + std::to_string(gi + 1) + " is not a complex automorphism: d(g* e{" +
                 std::to_string(k) + "}) != g*(d e{" + std::to_string(k) + "})");
    }
  }
}

void require_omega_invariant(const GroupAction& G, const Form& omega) {
  for (std::size_t gi = 0; gi < G.generators.size(); ++gi) {
    if (!(pullback(G.generators[gi], omega) == omega))
      fail(ErrorClass::group_invalid,
           "omega is not invariant under group generator " + std::to_string(gi + 1));
  }
}

Subcomplex invariant_complex(const ComplexModel& model, const GroupAction& G) {
  require_automorphisms(model, G);
  std::vector<std::vector<Form>> spans(model.dim() + 1);
  for (int k = 0; k <= model.dim(); ++k)
    for (Mask I : mask::degree_basis(model.dim(), k))
      spans[k].push_back(reynolds(G, Form::unit_basis(model.dim(), I)));
  return Subcomplex::from_spans(model, std::move(spans));
}

}  // namespace shl
