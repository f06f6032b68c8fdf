#include <array>
#include <cmath>
#include <vector>

#include "tvo/errors.hpp"
#include "tvo/evaluator.hpp"
#include "tvo/fusion_system.hpp"

namespace tvo {

namespace detail {

// Left-hand index triples (m, a, b) of the block F^{ijk}_l, in storage order.
std::vector<std::array<int, 3>> f_axis_left(const FusionRing& ring, int i,
                                            int j, int k, int l) {
  std::vector<std::array<int, 3>> out;
  for (int m = 0; m < ring.rank(); ++m)
    for (int a = 0; a < ring.n(i, j, m); ++a)
      for (int b = 0; b < ring.n(m, k, l); ++b) out.push_back({m, a, b});
  return out;
}

std::vector<std::array<int, 3>> f_axis_right(const FusionRing& ring, int i,
                                             int j, int k, int l) {
  std::vector<std::array<int, 3>> out;
  for (int n = 0; n < ring.rank(); ++n)
    for (int c = 0; c < ring.n(j, k, n); ++c)
      for (int d = 0; d < ring.n(i, n, l); ++d) out.push_back({n, c, d});
  return out;
}

}  // namespace detail

ValidationReport validate_pentagon(const FusionSystem& fs) {
  ValidationReport rep;
  const auto& ring = fs.ring;
  const int rank = ring.rank();
  Evaluator ev(fs);

  // Presence and unitarity of every admissible block; unit-leg blocks must be
  // identity (unit-triangle gauge).
  double worst_unitary = 0.0, worst_gauge = 0.0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      for (int k = 0; k < rank; ++k)
        for (int l = 0; l < rank; ++l) {
          auto left = detail::f_axis_left(ring, i, j, k, l);
          if (left.empty()) continue;
          const FBlock& blk = ev.fblock(i, j, k, l, false);
          if (!blk.any_entry)
            throw Error(ErrorKind::MissingEntry,
                        "admissible F block (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(k) + ";" +
                            std::to_string(l) + ") has no stored entries");
          Mat gram = blk.f * blk.f.adjoint();
          worst_unitary = std::max(
              worst_unitary,
              max_abs(gram - Mat::Identity(gram.rows(), gram.cols())));
          if (i == 0 || j == 0 || k == 0) {
            worst_gauge = std::max(
                worst_gauge,
                max_abs(blk.f - Mat::Identity(blk.f.rows(), blk.f.cols())));
          }
        }
  rep.add_residual("unit-gauge", worst_gauge, fs.tolerance,
                   "unit-leg F blocks must be identity");
  rep.add_residual("unitarity", worst_unitary, fs.tolerance);

  // Pentagon coherence, stated as the interchange law between grouped and
  // iterated tensoring: for vertices V in Hom(u -> [a,b]) and X in
  // Hom(c -> [x,y]),   a(b(X)) (V (x) 1) = (V (x) 1) u(X).
  double worst_coh = 0.0;
  for (int a = 0; a < rank; ++a)
    for (int b = 0; b < rank; ++b)
      for (int x = 0; x < rank; ++x)
        for (int y = 0; y < rank; ++y)
          for (int c = 0; c < rank; ++c) {
            const int nx = ring.n(x, y, c);
            for (int xi = 0; xi < nx; ++xi) {
              TreeVector X = ev.basis_vector(c, {x, y}, xi);
              TreeVector abX = ev.left_tensor(a, ev.left_tensor(b, X));
              TreeVector uXc;  // filled per u below
              for (int u = 0; u < rank; ++u) {
                const int nv = ring.n(a, b, u);
                for (int vi = 0; vi < nv; ++vi) {
                  TreeVector V = ev.basis_vector(u, {a, b}, vi);
                  TreeVector lhs = ev.compose(abX, ev.right_tensor(V, c));
                  TreeVector rhs =
                      ev.compose(ev.right_tensor(ev.right_tensor(V, x), y),
                                 ev.left_tensor(u, X));
                  rhs *= -1.0;
                  lhs += rhs;
                  worst_coh = std::max(worst_coh, lhs.norm());
                }
              }
            }
          }
  rep.add_residual("pentagon", worst_coh, fs.tolerance,
                   "grouped vs iterated tensoring on all vertex pairs");
  return rep;
}

}  // namespace tvo
