#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tvo/fusion_ring.hpp"
#include "tvo/numeric.hpp"

namespace tvo {

// A word of sector labels; the empty word is the monoidal unit.
using Word = std::vector<int>;

// A left-comb fusion tree over a word [a_1..a_k] with fixed root: one vertex
// per letter, recorded as (previous intermediate, multiplicity index).  The
// first vertex is always (0, 0) since unit fusion is multiplicity-free; the
// intermediate after the last vertex is the root and is kept implicit.
using TreePath = std::vector<std::pair<int, int>>;

struct TreeBasis {
  int root = 0;
  Word word;
  std::vector<TreePath> paths;
  std::map<TreePath, int> pos;

  int dim() const { return static_cast<int>(paths.size()); }
  int index(const TreePath& p) const {
    auto it = pos.find(p);
    return it == pos.end() ? -1 : it->second;
  }
};

// Enumerates the left-comb tree basis of Hom(root -> word), ordered
// lexicographically in (intermediate, multiplicity) per letter.
TreeBasis enumerate_trees(const FusionRing& ring, int root, const Word& word);

int hom_dim(const FusionRing& ring, int root, const Word& word);

// A morphism Hom(src -> tgt) in pair-of-trees coordinates: for each simple
// root c, a dense block indexed by (tree of c->tgt) x (tree of c->src).
// Absent roots are zero blocks.
struct TreeVector {
  Word src, tgt;
  std::map<int, Mat> blocks;

  TreeVector() = default;
  TreeVector(Word s, Word t) : src(std::move(s)), tgt(std::move(t)) {}

  double norm() const;
  bool is_zero(double tol) const { return norm() <= tol; }
  TreeVector& operator*=(cd s);
  TreeVector& operator+=(const TreeVector& other);  // requires same src/tgt

  // Hilbert-Schmidt pairing sum_c tr(W_c^* V_c); for morphisms out of a
  // simple object this is the intertwiner inner product <V,W> = W^* V.
  static cd dot(const TreeVector& v, const TreeVector& w);

  // The unique coefficient of a scalar morphism Hom([c] -> [c]) or
  // Hom([] -> []); requires src == tgt of length <= 1.
  cd scalar_value() const;

  // Deterministic flattening over (root asc, row-major block entries).
  Vec flatten() const;
};

}  // namespace tvo
