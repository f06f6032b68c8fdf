#include "tvo/tube_algebra.hpp"

#include <sstream>
#include <utility>

#include "tvo/errors.hpp"

namespace tvo {

namespace {

std::string sextuple_text(const TubeBasisElement& e) {
  std::ostringstream os;
  os << "(" << e.xi << "," << e.zeta << "," << e.eta << ";" << e.p << ","
     << e.b1 << "," << e.b2 << ")";
  return os.str();
}

}  // namespace

TubeAlgebra::TubeAlgebra(FusionSystem system) : ev_(std::move(system)) {
  enumerate_basis();
  build_products();
  build_star();
  build_gram();
  build_unit_and_twist();
}

void TubeAlgebra::enumerate_basis() {
  const FusionRing& ring = ev_.ring();
  const int n = ring.rank();
  for (int xi = 0; xi < n; ++xi)
    for (int zeta = 0; zeta < n; ++zeta)
      for (int eta = 0; eta < n; ++eta)
        for (int p = 0; p < n; ++p) {
          const int n1 = ring.N[xi][zeta][p];
          const int n2 = ring.N[zeta][eta][p];
          for (int b1 = 0; b1 < n1; ++b1)
            for (int b2 = 0; b2 < n2; ++b2) {
              index_[{xi, zeta, eta, p, b1, b2}] =
                  static_cast<int>(basis_.size());
              basis_.push_back({xi, zeta, eta, p, b1, b2});
            }
        }
}

int TubeAlgebra::find(int xi, int zeta, int eta, int p, int b1, int b2) const {
  auto it = index_.find({xi, zeta, eta, p, b1, b2});
  return it == index_.end() ? -1 : it->second;
}

TreeVector TubeAlgebra::as_tree_vector(int x) const {
  const TubeBasisElement& e = basis_.at(x);
  TreeVector tv({e.xi, e.zeta}, {e.zeta, e.eta});
  const FusionRing& ring = ev_.ring();
  Mat block = Mat::Zero(ring.N[e.zeta][e.eta][e.p], ring.N[e.xi][e.zeta][e.p]);
  block(e.b2, e.b1) = 1.0;
  tv.blocks[e.p] = std::move(block);
  return tv;
}

TreeVector TubeAlgebra::as_tree_vector(const Vec& v) const {
  TreeVector out;
  bool first = true;
  for (int x = 0; x < dim(); ++x) {
    if (std::abs(v(x)) == 0.0) continue;
    TreeVector term = as_tree_vector(x);
    term *= v(x);
    if (first) {
      out = std::move(term);
      first = false;
    } else {
      out += term;
    }
  }
  if (first) throw Error(ErrorKind::BadInput, "cannot embed the zero tube");
  return out;
}

Vec TubeAlgebra::coefficients_of(const TreeVector& tv) const {
  if (tv.src.size() != 2 || tv.tgt.size() != 2 || tv.src[1] != tv.tgt[0])
    throw Error(ErrorKind::TypeMismatch,
                "tube coefficients need a morphism [xi,zeta] -> [zeta,eta]");
  const int xi = tv.src[0], zeta = tv.src[1], eta = tv.tgt[1];
  Vec out = Vec::Zero(dim());
  for (const auto& [p, block] : tv.blocks) {
    for (int b2 = 0; b2 < block.rows(); ++b2)
      for (int b1 = 0; b1 < block.cols(); ++b1) {
        const cd v = block(b2, b1);
        const int idx = find(xi, zeta, eta, p, b1, b2);
        if (idx < 0) {
          if (std::abs(v) > 1e-12)
            throw Error(ErrorKind::DimensionMismatch,
                        "residual tube mass outside the basis at " +
                            sextuple_text({xi, zeta, eta, p, b1, b2}));
          continue;
        }
        out(idx) += v;
      }
  }
  return out;
}

void TubeAlgebra::build_products() {
  const FusionRing& ring = ev_.ring();
  const int n = ring.rank();
  const int D = dim();
  mult_.assign(D, std::vector<SparseCoeffs>(D));
  for (int x = 0; x < D; ++x) {
    const TubeBasisElement& ex = basis_[x];
    const TreeVector X = as_tree_vector(x);
    for (int y = 0; y < D; ++y) {
      const TubeBasisElement& ey = basis_[y];
      if (ex.eta != ey.xi) continue;
      const TreeVector Y = as_tree_vector(y);
      // e_x e_y = sum over nu < zeta zeta' and tree bases A of nu -> [zeta,
      // zeta'] of the tube (A* o zeta(Y) o (X x 1) o xi(A)).
      Vec acc = Vec::Zero(D);
      for (int nu = 0; nu < n; ++nu) {
        const int na = ring.N[ex.zeta][ey.zeta][nu];
        for (int a = 0; a < na; ++a) {
          TreeVector A = ev_.basis_vector(nu, {ex.zeta, ey.zeta}, a);
          TreeVector chain = ev_.left_tensor(ex.xi, A);
          chain = ev_.compose(ev_.right_tensor(X, ey.zeta), chain);
          chain = ev_.compose(ev_.left_tensor(ex.zeta, Y), chain);
          chain = ev_.compose(ev_.right_tensor(ev_.adjoint(A), ey.eta), chain);
          acc += coefficients_of(chain);
        }
      }
      SparseCoeffs& row = mult_[x][y];
      for (int f = 0; f < D; ++f)
        if (std::abs(acc(f)) > 1e-14) row.emplace_back(f, acc(f));
    }
  }
}

Vec TubeAlgebra::multiply(const Vec& a, const Vec& b) const {
  const int D = dim();
  if (a.size() != D || b.size() != D)
    throw Error(ErrorKind::DimensionMismatch, "tube coefficient size mismatch");
  Vec out = Vec::Zero(D);
  for (int x = 0; x < D; ++x) {
    if (std::abs(a(x)) < 1e-300) continue;
    for (int y = 0; y < D; ++y) {
      const cd s = a(x) * b(y);
      if (std::abs(s) < 1e-300) continue;
      for (const auto& [f, v] : mult_[x][y]) out(f) += s * v;
    }
  }
  return out;
}

void TubeAlgebra::build_star() {
  const int D = dim();
  star_matrix_ = Mat::Zero(D, D);
  for (int x = 0; x < D; ++x) {
    const TubeBasisElement& e = basis_[x];
    const int zb = ev_.dual(e.zeta);
    // star(X) = d(zeta) (1_zetabar x xi(Rbar_zeta^*) (X^* x 1_zetabar)) o
    //           (R_zeta x 1_eta x 1_zetabar), a tube [eta,zetabar]->[zetabar,xi].
    TreeVector inner = ev_.compose(
        ev_.left_tensor(e.xi, ev_.cap(e.zeta, true)),
        ev_.right_tensor(ev_.adjoint(as_tree_vector(x)), zb));
    TreeVector full = ev_.compose(
        ev_.left_tensor(zb, inner),
        ev_.right_tensor(ev_.right_tensor(ev_.cup(e.zeta, false), e.eta), zb));
    full *= ev_.d(e.zeta);
    star_matrix_.col(x) = coefficients_of(full);
  }
}

Vec TubeAlgebra::star(const Vec& v) const { return star_matrix_ * v.conjugate(); }

void TubeAlgebra::build_gram() {
  const int D = dim();
  gram_ = Mat::Zero(D, D);
  for (int x = 0; x < D; ++x) {
    const TubeBasisElement& a = basis_[x];
    const TreeVector X = as_tree_vector(x);
    for (int y = 0; y < D; ++y) {
      const TubeBasisElement& b = basis_[y];
      // <e_x, e_y> vanishes unless both tubes join the same three sectors.
      if (a.xi != b.xi || a.zeta != b.zeta || a.eta != b.eta) continue;
      const int zb = ev_.dual(a.zeta);
      TreeVector prod = ev_.compose(X, ev_.adjoint(as_tree_vector(y)));
      TreeVector sandwich = ev_.compose(
          ev_.right_tensor(ev_.cap(a.zeta, false), a.eta),
          ev_.compose(ev_.left_tensor(zb, prod),
                      ev_.right_tensor(ev_.cup(a.zeta, false), a.eta)));
      const cd val =
          ev_.d(a.xi) * ev_.d(a.xi) * sandwich.scalar_value();
      // inner(u, v) = v^H G u, so <e_x, e_y> lands at row y, column x.
      gram_(y, x) = val;
    }
  }
}

cd TubeAlgebra::inner(const Vec& a, const Vec& b) const {
  return (b.adjoint() * (gram_ * a))(0, 0);
}

void TubeAlgebra::build_unit_and_twist() {
  const int D = dim();
  const int n = ev_.rank();
  unit_ = Vec::Zero(D);
  for (int xi = 0; xi < n; ++xi) {
    const int idx = find(xi, 0, xi, xi, 0, 0);
    if (idx < 0)
      throw Error(ErrorKind::DimensionMismatch,
                  "missing unit component in sector " + std::to_string(xi));
    unit_(idx) = 1.0;
  }
  twist_ = Vec::Zero(D);
  for (int zeta = 0; zeta < n; ++zeta) {
    // d(zeta) R_zeta Rbar_zeta^* as a tube [zeta,zetabar] -> [zetabar,zeta].
    TreeVector tv = ev_.compose(ev_.cup(zeta, false), ev_.cap(zeta, true));
    tv *= ev_.d(zeta);
    twist_ += coefficients_of(tv);
  }
}

ValidationReport TubeAlgebra::structure_report() const {
  ValidationReport rep;
  const int D = dim();

  double unit_resid = 0.0;
  for (int x = 0; x < D; ++x) {
    Vec ex = Vec::Zero(D);
    ex(x) = 1.0;
    unit_resid = std::max(unit_resid, (multiply(unit_, ex) - ex).norm());
    unit_resid = std::max(unit_resid, (multiply(ex, unit_) - ex).norm());
  }
  rep.add_residual("unit-law", unit_resid, 1e-9);

  rep.add_residual("star-involution",
                   (star_matrix_ * star_matrix_.conjugate() - Mat::Identity(D, D))
                       .cwiseAbs()
                       .maxCoeff(),
                   1e-9);

  double anti = 0.0;
  const int stride = std::max(1, D / 12);
  for (int x = 0; x < D; x += stride)
    for (int y = 0; y < D; y += stride) {
      Vec ex = Vec::Zero(D), ey = Vec::Zero(D);
      ex(x) = 1.0;
      ey(y) = 1.0;
      const Vec lhs = star(multiply(ex, ey));
      const Vec rhs = multiply(star(ey), star(ex));
      anti = std::max(anti, (lhs - rhs).norm());
    }
  rep.add_residual("star-antimultiplicative", anti, 1e-9);

  rep.add_residual("gram-hermitian",
                   (gram_ - gram_.adjoint()).cwiseAbs().maxCoeff(), 1e-9);

  rep.add_residual("unit-star-fixed", (star(unit_) - unit_).norm(), 1e-9);
  return rep;
}

}  // namespace tvo
