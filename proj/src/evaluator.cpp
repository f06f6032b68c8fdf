#include "tvo/evaluator.hpp"

#include "tvo/errors.hpp"

namespace tvo {

namespace {

std::string word_str(const Word& w) {
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + "]";
}

}  // namespace

Evaluator::Evaluator(FusionSystem fs) : fs_(std::move(fs)) {}

const TreeBasis& Evaluator::trees(int root, const Word& w) {
  auto key = std::make_pair(root, w);
  auto it = tree_cache_.find(key);
  if (it == tree_cache_.end())
    it = tree_cache_.emplace(key, enumerate_trees(fs_.ring, root, w)).first;
  return it->second;
}

int Evaluator::hom_dim(int root, const Word& w) {
  return tvo::hom_dim(fs_.ring, root, w);
}

const FBlock& Evaluator::fblock(int i, int j, int k, int l, bool require_present) {
  std::array<int, 4> key{i, j, k, l};
  auto it = fblock_cache_.find(key);
  if (it == fblock_cache_.end()) {
    FBlock blk;
    const auto& ring = fs_.ring;
    int start = 0;
    for (int m = 0; m < rank(); ++m) {
      int na = ring.n(i, j, m), nb = ring.n(m, k, l);
      if (na > 0 && nb > 0) {
        blk.left.segs.push_back({m, na, nb, start});
        start += na * nb;
      }
    }
    blk.left.dim = start;
    start = 0;
    for (int n = 0; n < rank(); ++n) {
      int na = ring.n(j, k, n), nb = ring.n(i, n, l);
      if (na > 0 && nb > 0) {
        blk.right.segs.push_back({n, na, nb, start});
        start += na * nb;
      }
    }
    blk.right.dim = start;

    blk.f = Mat::Zero(blk.left.dim, blk.right.dim);
    for (const auto& ls : blk.left.segs)
      for (int a = 0; a < ls.na; ++a)
        for (int b = 0; b < ls.nb; ++b)
          for (const auto& rs : blk.right.segs)
            for (int c = 0; c < rs.na; ++c)
              for (int dd = 0; dd < rs.nb; ++dd) {
                auto fit = fs_.F.find({i, j, k, l, ls.label, a, b, rs.label, c, dd});
                if (fit != fs_.F.end()) {
                  blk.f(ls.start + a * ls.nb + b, rs.start + c * rs.nb + dd) =
                      fit->second;
                  blk.any_entry = true;
                }
              }
    it = fblock_cache_.emplace(key, std::move(blk)).first;
  }
  const FBlock& blk = it->second;
  if (require_present && blk.left.dim > 0 && !blk.any_entry)
    throw Error(ErrorKind::MissingFBlock,
                "F block (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + ";" + std::to_string(l) +
                    ") has no stored entries");
  return blk;
}

TreeVector Evaluator::basis_vector(int root, const Word& w, int index) {
  const TreeBasis& tb = trees(root, w);
  if (root < 0 || root >= rank() || index < 0 || index >= tb.dim())
    throw Error(ErrorKind::BadInput,
                "basis index " + std::to_string(index) + " out of range for Hom(" +
                    std::to_string(root) + " -> " + word_str(w) + ")");
  TreeVector v(Word{root}, w);
  Mat b = Mat::Zero(tb.dim(), 1);
  b(index, 0) = 1.0;
  v.blocks[root] = std::move(b);
  return v;
}

TreeVector Evaluator::identity(const Word& w) {
  TreeVector v(w, w);
  for (int c = 0; c < rank(); ++c) {
    int dim = trees(c, w).dim();
    if (dim > 0) v.blocks[c] = Mat::Identity(dim, dim);
  }
  return v;
}

TreeVector Evaluator::compose(const TreeVector& g, const TreeVector& f) {
  if (f.tgt != g.src)
    throw Error(ErrorKind::TypeMismatch,
                "compose: inner words differ: " + word_str(f.tgt) + " vs " +
                    word_str(g.src));
  TreeVector r(f.src, g.tgt);
  for (const auto& [c, gb] : g.blocks) {
    auto it = f.blocks.find(c);
    if (it != f.blocks.end()) r.blocks[c] = gb * it->second;
  }
  return r;
}

TreeVector Evaluator::adjoint(const TreeVector& x) {
  TreeVector r(x.tgt, x.src);
  for (const auto& [c, b] : x.blocks) r.blocks[c] = b.adjoint();
  return r;
}

TreeVector Evaluator::right_tensor(const TreeVector& x, int rho) {
  Word src = x.src, tgt = x.tgt;
  src.push_back(rho);
  tgt.push_back(rho);
  TreeVector r(src, tgt);
  const auto& ring = fs_.ring;
  for (int e = 0; e < rank(); ++e) {
    // Column/row offsets follow the tree enumeration of w+[rho]:
    // (c ascending, tree of c->w, nu ascending).
    int rd = trees(e, tgt).dim(), cdim = trees(e, src).dim();
    if (rd == 0 || cdim == 0) continue;
    Mat out;
    bool any = false;
    int row_start = 0, col_start = 0;
    std::vector<int> rstart(rank(), -1), cstart(rank(), -1);
    for (int c = 0; c < rank(); ++c) {
      int nv = ring.n(c, rho, e);
      if (nv == 0) continue;
      rstart[c] = row_start;
      cstart[c] = col_start;
      row_start += trees(c, x.tgt).dim() * nv;
      col_start += trees(c, x.src).dim() * nv;
    }
    for (const auto& [c, xb] : x.blocks) {
      int nv = ring.n(c, rho, e);
      if (nv == 0 || rstart[c] < 0) continue;
      if (!any) {
        out = Mat::Zero(rd, cdim);
        any = true;
      }
      for (int t2 = 0; t2 < xb.rows(); ++t2)
        for (int t1 = 0; t1 < xb.cols(); ++t1)
          for (int nu = 0; nu < nv; ++nu)
            out(rstart[c] + t2 * nv + nu, cstart[c] + t1 * nv + nu) = xb(t2, t1);
    }
    if (any) r.blocks[e] = std::move(out);
  }
  return r;
}

const Evaluator::AttachTable& Evaluator::attach(int rho, const Word& w) {
  auto key = std::make_pair(rho, w);
  auto it = attach_cache_.find(key);
  if (it != attach_cache_.end()) return it->second;

  AttachTable table;
  const auto& ring = fs_.ring;
  if (w.empty()) {
    AxisIndex g;
    g.segs.push_back({0, 1, 1, 0});
    g.dim = 1;
    table.grouped[rho] = g;
    table.u[rho] = Mat::Identity(1, 1);
  } else {
    Word prefix(w.begin(), w.end() - 1);
    const int z = w.back();
    const AttachTable& prev = attach(rho, prefix);

    Word rw = w;
    rw.insert(rw.begin(), rho);
    for (int e = 0; e < rank(); ++e) {
      const TreeBasis& lc = trees(e, rw);
      if (lc.dim() == 0) continue;

      AxisIndex g;
      int start = 0;
      for (int c = 0; c < rank(); ++c) {
        int nv = ring.n(rho, c, e);
        int dc = trees(c, w).dim();
        if (nv > 0 && dc > 0) {
          g.segs.push_back({c, nv, dc, start});
          start += nv * dc;
        }
      }
      g.dim = start;
      if (g.dim != lc.dim())
        throw Error(ErrorKind::DimensionMismatch,
                    "grouped and left-comb bases disagree on dim Hom(" +
                        std::to_string(e) + " -> " + word_str(rw) + ")");

      Mat u = Mat::Zero(lc.dim(), g.dim);
      for (int row = 0; row < lc.dim(); ++row) {
        const TreePath& s = lc.paths[row];
        const auto [uu, beta] = s.back();
        TreePath sp(s.begin(), s.end() - 1);
        auto pit = prev.u.find(uu);
        if (pit == prev.u.end()) continue;
        Word rp = prefix;
        rp.insert(rp.begin(), rho);
        int sp_idx = trees(uu, rp).index(sp);
        const AxisIndex& pg = prev.grouped.at(uu);
        const FBlock* fb = nullptr;
        for (const auto& seg : g.segs) {
          const int c = seg.label;
          const TreeBasis& ct = trees(c, w);
          for (int nu = 0; nu < seg.na; ++nu)
            for (int t = 0; t < seg.nb; ++t) {
              const TreePath& tp = ct.paths[t];
              const auto [m, mu] = tp.back();
              TreePath tpp(tp.begin(), tp.end() - 1);
              int tpp_idx = trees(m, prefix).index(tpp);
              fb = &fblock(rho, m, z, e);
              int rcol = fb->right.find(c, mu, nu);
              if (rcol < 0) continue;
              cd acc = 0.0;
              const int nalpha = ring.n(rho, m, uu);
              for (int alpha = 0; alpha < nalpha; ++alpha) {
                int lrow = fb->left.find(uu, alpha, beta);
                int pcol = pg.find(m, alpha, tpp_idx);
                if (lrow < 0 || pcol < 0) continue;
                acc += std::conj(fb->f(lrow, rcol)) * pit->second(sp_idx, pcol);
              }
              u(row, seg.start + nu * seg.nb + t) += acc;
            }
        }
      }
      table.grouped[e] = std::move(g);
      table.u[e] = std::move(u);
    }
  }
  return attach_cache_.emplace(key, std::move(table)).first->second;
}

TreeVector Evaluator::left_tensor(int rho, const TreeVector& x) {
  Word src = x.src, tgt = x.tgt;
  src.insert(src.begin(), rho);
  tgt.insert(tgt.begin(), rho);
  const AttachTable& at_src = attach(rho, x.src);
  const AttachTable& at_tgt = attach(rho, x.tgt);
  TreeVector r(src, tgt);
  for (const auto& [e, u_tgt] : at_tgt.u) {
    auto sit = at_src.u.find(e);
    if (sit == at_src.u.end()) continue;
    const AxisIndex& gt = at_tgt.grouped.at(e);
    const AxisIndex& gs = at_src.grouped.at(e);
    Mat grouped = Mat::Zero(gt.dim, gs.dim);
    bool any = false;
    for (const auto& [c, xb] : x.blocks) {
      const AxisIndex::Seg* ts = nullptr;
      const AxisIndex::Seg* ss = nullptr;
      for (const auto& seg : gt.segs)
        if (seg.label == c) ts = &seg;
      for (const auto& seg : gs.segs)
        if (seg.label == c) ss = &seg;
      if (!ts || !ss) continue;
      any = true;
      for (int nu = 0; nu < ts->na; ++nu)
        grouped.block(ts->start + nu * ts->nb, ss->start + nu * ss->nb,
                      ts->nb, ss->nb) = xb;
    }
    if (!any) continue;
    r.blocks[e] = u_tgt * grouped * sit->second.adjoint();
  }
  return r;
}

TreeVector Evaluator::cup(int rho, bool bar) {
  const int rb = dual(rho);
  Word tgt = bar ? Word{rho, rb} : Word{rb, rho};
  TreeVector v(Word{}, tgt);
  const TreeBasis& tb = trees(0, tgt);
  if (tb.dim() != 1)
    throw Error(ErrorKind::TypeMismatch, "duality channel is not 1-dimensional");
  Mat b(1, 1);
  b(0, 0) = bar ? rbar_coeff(rho) : r_coeff(rho);
  v.blocks[0] = std::move(b);
  return v;
}

TreeVector Evaluator::cap(int rho, bool bar) { return adjoint(cup(rho, bar)); }

cd Evaluator::f_scalar(int rho) {
  const int rb = dual(rho);
  const FBlock& fb = fblock(rho, rb, rho, rho);
  int lrow = fb.left.find(0, 0, 0);
  int rcol = fb.right.find(0, 0, 0);
  if (lrow < 0 || rcol < 0)
    throw Error(ErrorKind::MissingFBlock, "duality F entry inadmissible");
  return fb.f(lrow, rcol);
}

int Evaluator::fs_sign(int rho) {
  if (dual(rho) != rho) return 0;
  cd c = duality_phase(rho);
  if (std::abs(c - cd(1.0)) < 1e-6) return 1;
  if (std::abs(c + cd(1.0)) < 1e-6) return -1;
  throw Error(ErrorKind::MissingFBlock,
              "self-dual sector " + std::to_string(rho) +
                  " has non-real duality phase");
}

cd Evaluator::r_coeff(int rho) {
  const int rb = dual(rho);
  if (rho <= rb) return 1.0;
  // Second member of a dual pair: phase chosen so that Rbar_{rb} = R_rho.
  return duality_phase(rho);
}

cd Evaluator::rbar_coeff(int rho) {
  const int rb = dual(rho);
  if (rho == rb) return static_cast<double>(fs_sign(rho)) * r_coeff(rho);
  return r_coeff(rb);
}

}  // namespace tvo
