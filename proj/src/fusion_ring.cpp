#include "tvo/fusion_ring.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "tvo/errors.hpp"
#include "tvo/numeric.hpp"

namespace tvo {

FusionRing FusionRing::with_rank(std::string name, int rank) {
  FusionRing r;
  r.name = std::move(name);
  r.labels.resize(rank);
  for (int i = 0; i < rank; ++i) r.labels[i] = std::to_string(i);
  r.dual.assign(rank, 0);
  r.N.assign(rank, std::vector<std::vector<int>>(rank, std::vector<int>(rank, 0)));
  return r;
}

ValidationReport validate_fusion_ring(const FusionRing& ring) {
  ValidationReport rep;
  const int m = ring.rank();

  bool shape_ok = static_cast<int>(ring.dual.size()) == m &&
                  static_cast<int>(ring.N.size()) == m;
  for (int i = 0; shape_ok && i < m; ++i) {
    shape_ok = static_cast<int>(ring.N[i].size()) == m;
    for (int j = 0; shape_ok && j < m; ++j)
      shape_ok = static_cast<int>(ring.N[i][j].size()) == m;
  }
  rep.add("shape", shape_ok, shape_ok ? 0.0 : 1.0,
          shape_ok ? "" : "N or dual has wrong dimensions");
  if (!shape_ok) return rep;

  bool nonneg = true;
  for (int i = 0; i < m && nonneg; ++i)
    for (int j = 0; j < m && nonneg; ++j)
      for (int k = 0; k < m && nonneg; ++k) nonneg = ring.n(i, j, k) >= 0;
  rep.add("non-negative", nonneg, nonneg ? 0.0 : 1.0);

  bool dual_ok = true;
  for (int i = 0; i < m; ++i) {
    if (ring.dual[i] < 0 || ring.dual[i] >= m || ring.dual[ring.dual[i]] != i)
      dual_ok = false;
  }
  if (m > 0 && ring.dual[0] != 0) dual_ok = false;
  rep.add("dual-involution", dual_ok, dual_ok ? 0.0 : 1.0,
          dual_ok ? "" : "dual must be an involution fixing the unit");
  if (!dual_ok || !nonneg) return rep;

  int unit_bad = 0;
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      if (ring.n(0, j, k) != (j == k ? 1 : 0)) ++unit_bad;
      if (ring.n(j, 0, k) != (j == k ? 1 : 0)) ++unit_bad;
    }
  rep.add("unit-law", unit_bad == 0, static_cast<double>(unit_bad));

  int duality_bad = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (ring.n(i, j, 0) != (j == ring.dual[i] ? 1 : 0)) ++duality_bad;
  rep.add("duality-pairing", duality_bad == 0, static_cast<double>(duality_bad),
          duality_bad ? "N[i][j][0] must be 1 exactly when j = dual(i)" : "");

  long long assoc_bad = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          long long lhs = 0, rhs = 0;
          for (int x = 0; x < m; ++x) {
            lhs += static_cast<long long>(ring.n(i, j, x)) * ring.n(x, k, l);
            rhs += static_cast<long long>(ring.n(j, k, x)) * ring.n(i, x, l);
          }
          if (lhs != rhs) ++assoc_bad;
        }
  rep.add("associativity", assoc_bad == 0, static_cast<double>(assoc_bad));

  // Frobenius reciprocity: N_{ij}^k = N_{i\bar k}^{\bar j}... equivalent to
  // invariance of N_{ij}^k under the rotation (i,j,k) -> (j, dual k, dual i).
  int frob_bad = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (ring.n(i, j, k) != ring.n(j, ring.dual[k], ring.dual[i])) ++frob_bad;
  rep.add("frobenius-reciprocity", frob_bad == 0, static_cast<double>(frob_bad));

  return rep;
}

namespace {

// Spectral radius of a non-negative matrix by deterministic power iteration.
// Iterates A + I so that bipartite supports (eigenvalues +-r) still converge.
double spectral_radius(const Eigen::MatrixXd& a) {
  const int m = static_cast<int>(a.rows());
  Eigen::MatrixXd shifted = a + Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m);
  double lam = 0.0;
  for (int it = 0; it < 50000; ++it) {
    Eigen::VectorXd w = shifted * v;
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    double next = w.dot(shifted * w);
    if (it > 4 && std::abs(next - lam) <= 1e-15 * std::max(1.0, std::abs(next)))
      return next - 1.0;
    lam = next;
    v = w;
  }
  return lam - 1.0;
}

}  // namespace

QuantumDims quantum_dims(const FusionRing& ring, double tol) {
  const int m = ring.rank();
  QuantumDims q;
  q.d.resize(m);
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd ni(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) ni(j, k) = ring.n(i, j, k);
    q.d[i] = spectral_radius(ni);
  }

  double worst = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int k = 0; k < m; ++k) s += ring.n(i, j, k) * q.d[k];
      worst = std::max(worst, std::abs(q.d[i] * q.d[j] - s));
    }
  q.residual = worst;

  bool positive = true;
  for (double di : q.d)
    if (!(di >= 1.0 - 1e-9) || !std::isfinite(di)) positive = false;
  if (!positive || worst > tol * 100 ||
      (m > 0 && std::abs(q.d[0] - 1.0) > tol)) {
    throw Error(ErrorKind::NoPositiveSolution,
                "no positive dimension vector solves d_i d_j = sum_k N_ijk d_k "
                "(residual " + fmt_double(worst) + ")");
  }
  q.d[0] = 1.0;

  double lam = 0.0;
  for (int i = 0; i < m; ++i) {
    if (ring.dual[i] < m &&
        std::abs(q.d[i] - q.d[ring.dual[i]]) > 100 * tol)
      throw Error(ErrorKind::NoPositiveSolution,
                  "dimensions not dual-symmetric");
    lam += q.d[i] * q.d[i];
  }
  q.lambda = lam;
  return q;
}

}  // namespace tvo
