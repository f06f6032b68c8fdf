#include "tvo/trees.hpp"

#include <cmath>

#include "tvo/errors.hpp"

namespace tvo {

TreeBasis enumerate_trees(const FusionRing& ring, int root, const Word& word) {
  TreeBasis tb;
  tb.root = root;
  tb.word = word;
  if (word.empty()) {
    if (root == 0) tb.paths.push_back({});
  } else {
    Word prefix(word.begin(), word.end() - 1);
    const int z = word.back();
    for (int c = 0; c < ring.rank(); ++c) {
      const int mult = ring.n(c, z, root);
      if (mult == 0) continue;
      TreeBasis sub = enumerate_trees(ring, c, prefix);
      for (const TreePath& p : sub.paths)
        for (int nu = 0; nu < mult; ++nu) {
          TreePath q = p;
          q.emplace_back(c, nu);
          tb.paths.push_back(std::move(q));
        }
    }
  }
  for (int idx = 0; idx < tb.dim(); ++idx) tb.pos[tb.paths[idx]] = idx;
  return tb;
}

int hom_dim(const FusionRing& ring, int root, const Word& word) {
  // Row vector of multiplicities of each intermediate, folded letter by letter.
  std::vector<long long> cur(ring.rank(), 0);
  cur[0] = 1;
  for (int z : word) {
    std::vector<long long> next(ring.rank(), 0);
    for (int c = 0; c < ring.rank(); ++c) {
      if (!cur[c]) continue;
      for (int e = 0; e < ring.rank(); ++e)
        next[e] += cur[c] * ring.n(c, z, e);
    }
    cur = std::move(next);
  }
  return static_cast<int>(cur[root]);
}

double TreeVector::norm() const {
  double s = 0.0;
  for (const auto& [c, b] : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

TreeVector& TreeVector::operator*=(cd s) {
  for (auto& [c, b] : blocks) b *= s;
  return *this;
}

TreeVector& TreeVector::operator+=(const TreeVector& other) {
  if (src != other.src || tgt != other.tgt)
    throw Error(ErrorKind::TypeMismatch, "adding morphisms of different type");
  for (const auto& [c, b] : other.blocks) {
    auto it = blocks.find(c);
    if (it == blocks.end())
      blocks[c] = b;
    else
      it->second += b;
  }
  return *this;
}

cd TreeVector::dot(const TreeVector& v, const TreeVector& w) {
  if (v.src != w.src || v.tgt != w.tgt)
    throw Error(ErrorKind::TypeMismatch, "pairing morphisms of different type");
  cd s = 0.0;
  for (const auto& [c, b] : v.blocks) {
    auto it = w.blocks.find(c);
    if (it != w.blocks.end()) s += (it->second.conjugate().cwiseProduct(b)).sum();
  }
  return s;
}

cd TreeVector::scalar_value() const {
  if (src != tgt || src.size() > 1)
    throw Error(ErrorKind::TypeMismatch,
                "scalar_value requires an endomorphism of a simple or empty word");
  const int root = src.empty() ? 0 : src[0];
  auto it = blocks.find(root);
  if (it == blocks.end()) return 0.0;
  if (it->second.rows() != 1 || it->second.cols() != 1)
    throw Error(ErrorKind::TypeMismatch, "scalar block is not 1x1");
  return it->second(0, 0);
}

Vec TreeVector::flatten() const {
  Eigen::Index n = 0;
  for (const auto& [c, b] : blocks) n += b.size();
  Vec out(n);
  Eigen::Index at = 0;
  for (const auto& [c, b] : blocks)
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      for (Eigen::Index cc = 0; cc < b.cols(); ++cc) out(at++) = b(r, cc);
  return out;
}

}  // namespace tvo
