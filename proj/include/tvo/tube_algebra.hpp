#pragma once

#include <array>
#include <map>
#include <vector>

#include "tvo/evaluator.hpp"
#include "tvo/fusion_system.hpp"
#include "tvo/numeric.hpp"
#include "tvo/report.hpp"

namespace tvo {

// One basis element of the annular category's algebra of "tubes": a morphism
// xi (x) zeta -> zeta (x) eta, recorded as the rank-one map |p,b2><p,b1| in
// tree coordinates, i.e. the ket is vertex b2 of Hom(p -> [zeta,eta]) and the
// bra is vertex b1 of Hom(p -> [xi,zeta]).
struct TubeBasisElement {
  int xi = 0;
  int zeta = 0;
  int eta = 0;
  int p = 0;
  int b1 = 0;
  int b2 = 0;
};

class TubeAlgebra {
 public:
  explicit TubeAlgebra(FusionSystem system);

  const FusionSystem& system() const { return ev_.system(); }
  Evaluator& evaluator() { return ev_; }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<TubeBasisElement>& basis() const { return basis_; }
  const TubeBasisElement& basis_element(int x) const { return basis_.at(x); }

  // Index of a basis element; -1 when the sextuple is not admissible.
  int find(int xi, int zeta, int eta, int p, int b1, int b2) const;

  // Structure constants: coefficients of e_x * e_y in the basis, stored as
  // (index, value) pairs because each product touches only a few sectors.
  using SparseCoeffs = std::vector<std::pair<int, cd>>;
  const SparseCoeffs& product(int x, int y) const { return mult_.at(x).at(y); }
  Vec multiply(const Vec& a, const Vec& b) const;

  // The *-involution is conjugate linear: star(v) = star_matrix * conj(v).
  Vec star(const Vec& v) const;

  // Inner product <a, b>, linear in a and conjugate linear in b.
  cd inner(const Vec& a, const Vec& b) const;
  const Mat& gram() const { return gram_; }

  const Vec& unit() const { return unit_; }

  // Sum over sectors of the "rotate by one strand" element; multiplying by it
  // realises the inverse Dehn-twist action used for the T matrix.
  const Vec& twist_element() const { return twist_; }

  // Basic structural self-checks (unit law, star anti-multiplicativity on a
  // sample, gram hermiticity).  Cheap enough to run at build time.
  ValidationReport structure_report() const;

  // Coefficients of the tube represented by an evaluator morphism
  // [xi, zeta] -> [zeta', eta] (zero vector if the words do not fit any
  // sector).  Used both internally and by tests.
  Vec coefficients_of(const TreeVector& tv) const;

  TreeVector as_tree_vector(int x) const;
  TreeVector as_tree_vector(const Vec& v) const;

 private:
  void enumerate_basis();
  void build_products();
  void build_star();
  void build_gram();
  void build_unit_and_twist();

  Evaluator ev_;
  std::vector<TubeBasisElement> basis_;
  std::map<std::array<int, 6>, int> index_;
  std::vector<std::vector<SparseCoeffs>> mult_;
  Mat star_matrix_;
  Mat gram_;
  Vec unit_;
  Vec twist_;
};

// Center of the tube algebra: a basis of the commutant and the minimal
// projections that split it into matrix blocks.
struct CenterData {
  Mat basis;                    // dim x rank, columns span the center
  std::vector<Vec> projections; // minimal central projections, canonical order
  int rank() const { return static_cast<int>(projections.size()); }
};

CenterData compute_center(const TubeAlgebra& tube, unsigned long long seed);

}  // namespace tvo
