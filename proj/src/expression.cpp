#include "tvo/expression.hpp"

#include <cmath>

#include "tvo/errors.hpp"

namespace tvo {

ExprPtr Expr::basis(int root, Word word, int index) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::BasisVector;
  e->root = root;
  e->word = std::move(word);
  e->index = index;
  return e;
}

ExprPtr Expr::adjoint(ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Adjoint;
  e->a = std::move(x);
  return e;
}

ExprPtr Expr::compose(ExprPtr after, ExprPtr first) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Compose;
  e->a = std::move(after);
  e->b = std::move(first);
  return e;
}

ExprPtr Expr::ltensor(int label, ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::LeftTensor;
  e->label = label;
  e->a = std::move(x);
  return e;
}

ExprPtr Expr::rtensor(ExprPtr x, int label) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::RightTensor;
  e->label = label;
  e->a = std::move(x);
  return e;
}

ExprPtr Expr::cup(int label, bool bar) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Cup;
  e->label = label;
  e->bar = bar;
  return e;
}

ExprPtr Expr::cap(int label, bool bar) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Cap;
  e->label = label;
  e->bar = bar;
  return e;
}

ExprPtr Expr::scale(cd factor, ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Scale;
  e->factor = factor;
  e->a = std::move(x);
  return e;
}

TreeVector eval_expression(Evaluator& ev, const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::BasisVector:
      return ev.basis_vector(e->root, e->word, e->index);
    case Expr::Kind::Adjoint:
      return ev.adjoint(eval_expression(ev, e->a));
    case Expr::Kind::Compose:
      return ev.compose(eval_expression(ev, e->a), eval_expression(ev, e->b));
    case Expr::Kind::LeftTensor:
      return ev.left_tensor(e->label, eval_expression(ev, e->a));
    case Expr::Kind::RightTensor:
      return ev.right_tensor(eval_expression(ev, e->a), e->label);
    case Expr::Kind::Cup:
      return ev.cup(e->label, e->bar);
    case Expr::Kind::Cap:
      return ev.cap(e->label, e->bar);
    case Expr::Kind::Scale: {
      TreeVector v = eval_expression(ev, e->a);
      v *= e->factor;
      return v;
    }
  }
  throw Error(ErrorKind::TypeMismatch, "unknown expression node");
}

namespace {

// Splits Hom(zeta -> [rho,eta]) morphism type, validating shape.
void check_vertex_type(const TreeVector& a) {
  if (a.src.size() != 1 || a.tgt.size() != 2)
    throw Error(ErrorKind::TypeMismatch,
                "Frobenius maps expect Hom(simple -> pair of sectors)");
}

}  // namespace

TreeVector frobenius_tilde(Evaluator& ev, const TreeVector& a) {
  check_vertex_type(a);
  const int rho = a.tgt[0], eta = a.tgt[1], zeta = a.src[0];
  const int rb = ev.dual(rho);
  const double pref =
      std::sqrt(ev.d(rho) * ev.d(eta) / ev.d(zeta));
  // dual(rho)(A^*) composed with (R_rho (x) 1_eta).
  TreeVector astar = ev.adjoint(a);                        // [rho,eta] -> [zeta]
  TreeVector lhs = ev.left_tensor(rb, astar);              // [rb,rho,eta] -> [rb,zeta]
  TreeVector cupv = ev.right_tensor(ev.cup(rho, false), eta);  // [eta] -> [rb,rho,eta]
  TreeVector out = ev.compose(lhs, cupv);
  out *= pref;
  return out;
}

TreeVector frobenius_hat(Evaluator& ev, const TreeVector& a) {
  check_vertex_type(a);
  const int rho = a.tgt[0], eta = a.tgt[1], zeta = a.src[0];
  const int eb = ev.dual(eta);
  const double pref =
      std::sqrt(ev.d(rho) * ev.d(eta) / ev.d(zeta));
  TreeVector astar = ev.adjoint(a);                     // [rho,eta] -> [zeta]
  TreeVector lhs = ev.right_tensor(astar, eb);          // [rho,eta,eb] -> [zeta,eb]
  TreeVector rbar = ev.left_tensor(rho, ev.cup(eta, true));  // [rho] -> [rho,eta,eb]
  TreeVector out = ev.compose(lhs, rbar);
  out *= pref;
  return out;
}

}  // namespace tvo
