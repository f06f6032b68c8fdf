#include <algorithm>
#include <random>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "tvo/errors.hpp"
#include "tvo/tube_algebra.hpp"

namespace tvo {

namespace {

// Null space of all commutators [e_b, -], found as the small eigenvalues of
// M = sum_b C_b^H C_b with C_b the adjoint-action matrix of e_b.
Mat center_basis(const TubeAlgebra& tube) {
  const int D = tube.dim();
  Mat M = Mat::Zero(D, D);
  Mat C(D, D);
  for (int b = 0; b < D; ++b) {
    C.setZero();
    for (int e = 0; e < D; ++e) {
      for (const auto& [f, v] : tube.product(e, b)) C(f, e) += v;
      for (const auto& [f, v] : tube.product(b, e)) C(f, e) -= v;
    }
    M.noalias() += C.adjoint() * C;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double thresh = 1e-10 * std::max(1.0, ev(D - 1));
  int r = 0;
  while (r < D && ev(r) <= thresh) ++r;
  if (r == 0)
    throw Error(ErrorKind::DegenerateSplit,
                "commutant computation found no central vectors");
  return es.eigenvectors().leftCols(r);
}

// Sort key that is independent of the random seed: the projections are
// canonical objects, so rounding their coordinates coarsely gives a stable
// fingerprint.
std::vector<std::pair<long long, long long>> fingerprint(const Vec& q) {
  std::vector<std::pair<long long, long long>> key(q.size());
  for (int i = 0; i < q.size(); ++i)
    key[i] = {std::llround(q(i).real() * 1e6), std::llround(q(i).imag() * 1e6)};
  return key;
}

}  // namespace

CenterData compute_center(const TubeAlgebra& tube, unsigned long long seed) {
  const int D = tube.dim();
  CenterData out;
  out.basis = center_basis(tube);
  const int r = static_cast<int>(out.basis.cols());
  const Mat& Z = out.basis;

  // Multiplication by a generic self-adjoint central element splits the
  // center into its one-dimensional blocks; its eigenvectors are the minimal
  // projections up to scale.
  std::string failure = "no attempt made";
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * attempt);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec g(r);
    for (int i = 0; i < r; ++i) g(i) = cd(gauss(rng), gauss(rng));
    const Vec z = Z * g;
    const Vec h = 0.5 * (z + tube.star(z));

    // Matrix of left multiplication by h on the center (columns of Z are
    // orthonormal in the coordinate inner product).
    Mat Mh(r, r);
    bool closed = true;
    for (int j = 0; j < r; ++j) {
      const Vec w = tube.multiply(h, Z.col(j));
      const Vec c = Z.adjoint() * w;
      if ((Z * c - w).norm() > 1e-8 * std::max(1.0, w.norm())) {
        closed = false;
        break;
      }
      Mh.col(j) = c;
    }
    if (!closed) {
      failure = "center not closed under multiplication";
      continue;
    }

    // The tube inner product is *-compatible, so h = h* acts hermitianly
    // once the center basis is orthonormalised against the gram form.
    const Mat Gc = Z.adjoint() * tube.gram() * Z;
    Eigen::LLT<Mat> llt(Gc);
    Mat vectors;  // columns: center coordinates of the candidate projections
    if (llt.info() == Eigen::Success) {
      const Mat Lh = Mat(llt.matrixL()).adjoint();
      const Mat Linv = Lh.triangularView<Eigen::Upper>().solve(
          Mat::Identity(r, r));
      const Mat Mon = Lh * Mh * Linv;
      if ((Mon - Mon.adjoint()).cwiseAbs().maxCoeff() <
          1e-7 * std::max(1.0, Mon.cwiseAbs().maxCoeff())) {
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (Mon + Mon.adjoint()));
        vectors = Linv * es.eigenvectors();
      }
    }
    if (vectors.size() == 0) {
      Eigen::ComplexEigenSolver<Mat> es(Mh);
      if (es.info() != Eigen::Success) {
        failure = "eigen decomposition failed";
        continue;
      }
      vectors = es.eigenvectors();
    }

    std::vector<Vec> qs;
    bool good = true;
    for (int k = 0; k < r && good; ++k) {
      const Vec u = Z * vectors.col(k);
      const Vec w = tube.multiply(u, u);
      const cd gamma = u.dot(w) / u.dot(u);
      if (std::abs(gamma) < 1e-8 ||
          (w - gamma * u).norm() > 1e-8 * std::max(1.0, w.norm())) {
        failure = "eigenvector is not proportional to its square";
        good = false;
        break;
      }
      qs.push_back(u / gamma);
    }
    if (!good) continue;

    double resid = 0.0;
    Vec total = Vec::Zero(D);
    for (int a = 0; a < r && good; ++a) {
      const Vec& q = qs[a];
      const double scale = 1.0 + q.norm();
      resid = std::max(resid,
                       (tube.multiply(q, q) - q).norm() / (scale * scale));
      resid = std::max(resid, (tube.star(q) - q).norm() / scale);
      for (int b = a + 1; b < r; ++b)
        resid = std::max(resid, tube.multiply(q, qs[b]).norm() /
                                    (scale * (1.0 + qs[b].norm())));
      total += q;
    }
    resid = std::max(resid,
                     (total - tube.unit()).norm() / (1.0 + total.norm()));
    if (resid > 1e-7) {
      failure = "projection system residual " + std::to_string(resid);
      continue;
    }

    std::sort(qs.begin(), qs.end(), [](const Vec& a, const Vec& b) {
      return fingerprint(a) < fingerprint(b);
    });
    out.projections = std::move(qs);
    return out;
  }
  throw Error(ErrorKind::DegenerateSplit,
              "could not split the center into minimal projections: " +
                  failure);
}

}  // namespace tvo
