#pragma once

#include <array>
#include <map>
#include <vector>

#include "tvo/fusion_system.hpp"
#include "tvo/trees.hpp"

namespace tvo {

// Enumerates triples (label, a, b) with per-label multiplicities, used for
// both sides of an F-block and for grouped tensor bases.
struct AxisIndex {
  struct Seg {
    int label, na, nb, start;
  };
  std::vector<Seg> segs;
  int dim = 0;

  int find(int label, int a, int b) const {
    for (const auto& s : segs)
      if (s.label == label) return s.start + a * s.nb + b;
    return -1;
  }
};

// Dense F-block for fixed outer labels (i,j,k;l), rows = left bracketings
// (m,a,b), cols = right bracketings (n,c,d).
struct FBlock {
  AxisIndex left, right;
  Mat f;
  bool any_entry = false;  // at least one stored coefficient
};

// Evaluation engine for intertwiner expressions over one fusion system.  All
// morphisms are kept in left-comb tree coordinates; the only F-move primitive
// is the unitary that regroups rho(|c;t>) T_{rho c}^{e} into the left comb of
// [rho]+word, built by recursion over the word.  Caches are pure.
class Evaluator {
 public:
  explicit Evaluator(FusionSystem fs);

  const FusionSystem& system() const { return fs_; }
  const FusionRing& ring() const { return fs_.ring; }
  int rank() const { return fs_.rank(); }
  int dual(int i) const { return fs_.dual(i); }
  double d(int i) const { return fs_.d(i); }

  const TreeBasis& trees(int root, const Word& w);
  int hom_dim(int root, const Word& w);

  // Dense block of F^{ijk}_l; throws Error(MissingFBlock) when require_present
  // and the admissible block has no stored entries.
  const FBlock& fblock(int i, int j, int k, int l, bool require_present = true);

  TreeVector zero(const Word& src, const Word& tgt) { return {src, tgt}; }
  TreeVector basis_vector(int root, const Word& w, int index);
  TreeVector identity(const Word& w);
  TreeVector compose(const TreeVector& g, const TreeVector& f);
  TreeVector adjoint(const TreeVector& x);
  TreeVector right_tensor(const TreeVector& x, int rho);
  TreeVector left_tensor(int rho, const TreeVector& x);

  // Duality morphisms: cup(rho,false) = R_rho in Hom([] -> [dual(rho), rho]),
  // cup(rho,true) = Rbar_rho in Hom([] -> [rho, dual(rho)]); caps are their
  // adjoints.  Phases follow the balanced convention Rbar_rho = R_{dual(rho)}
  // (= fs_sign(rho) R_rho for self-dual rho), so both zig-zag scalars are
  // exactly 1/d(rho).
  TreeVector cup(int rho, bool bar);
  TreeVector cap(int rho, bool bar);

  cd f_scalar(int rho);  // F^{rho, dual, rho}_rho [0,0]

  // d(rho) * f_scalar(rho): a modulus-1 invariant of the duality channel;
  // for self-dual rho it is the Frobenius-Schur sign.
  cd duality_phase(int rho) { return d(rho) * f_scalar(rho); }
  int fs_sign(int rho);       // +-1 for self-dual rho; 0 otherwise
  cd r_coeff(int rho);        // coefficient of R_rho on its unique tree
  cd rbar_coeff(int rho);     // coefficient of Rbar_rho on its unique tree

 private:
  struct AttachTable {
    // For each root e: grouped index (c,nu,t) -> left-comb trees of [rho]+w.
    std::map<int, Mat> u;
    std::map<int, AxisIndex> grouped;  // (c, nu, t) as (label, na=nu count, nb=tree count)
  };
  const AttachTable& attach(int rho, const Word& w);

  const FusionSystem fs_;
  std::map<std::pair<int, Word>, TreeBasis> tree_cache_;
  std::map<std::array<int, 4>, FBlock> fblock_cache_;
  std::map<std::pair<int, Word>, AttachTable> attach_cache_;
};

}  // namespace tvo
