#pragma once

#include <memory>

#include "tvo/evaluator.hpp"

namespace tvo {

// Abstract intertwiner expression.  Leaves are tree-basis vectors and duality
// cups/caps; internal nodes are adjoint, composition, tensoring by a sector
// label on either side, and scalar multiples.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    BasisVector,  // |root; index> in Hom(root -> word)
    Adjoint,
    Compose,      // a after b
    LeftTensor,   // label (x) a   (image under the sector endomorphism)
    RightTensor,  // a (x) label   (same coefficients, larger type)
    Cup,          // R (bar=false) or Rbar (bar=true)
    Cap,
    Scale,
  };

  Kind kind;
  int root = 0, index = 0, label = 0;
  bool bar = false;
  Word word;
  cd factor{0.0, 0.0};
  ExprPtr a, b;

  static ExprPtr basis(int root, Word word, int index);
  static ExprPtr adjoint(ExprPtr x);
  static ExprPtr compose(ExprPtr after, ExprPtr first);
  static ExprPtr ltensor(int label, ExprPtr x);
  static ExprPtr rtensor(ExprPtr x, int label);
  static ExprPtr cup(int label, bool bar);
  static ExprPtr cap(int label, bool bar);
  static ExprPtr scale(cd factor, ExprPtr x);
};

// Evaluates an expression to left-comb tree coordinates.
// Errors: TypeMismatch (non-composable words), MissingFBlock (evaluation
// touched an admissible F block with no stored entries).
TreeVector eval_expression(Evaluator& ev, const ExprPtr& e);

// Frobenius duality maps on H_{rho eta}^zeta = Hom(zeta -> [rho, eta]):
//   tilde: -> Hom(eta -> [dual(rho), zeta]),  A |-> sqrt(d_rho d_eta / d_zeta) dual(rho)(A^*) R_rho
//   hat:   -> Hom(rho -> [zeta, dual(eta)]),  A |-> sqrt(d_rho d_eta / d_zeta) A^* rho(Rbar_eta)
// Both are conjugate-linear isometries.
TreeVector frobenius_tilde(Evaluator& ev, const TreeVector& a);
TreeVector frobenius_hat(Evaluator& ev, const TreeVector& a);

}  // namespace tvo
