#include "tvo/modular_from_tube.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/QR>

#include "tvo/errors.hpp"

namespace tvo {

namespace {

// S' on a diagonal basis tube (xi,eta,xi;p,b1,b2):
//   S'(X) = d(xi) (R_eta^* x 1) etabar(X xi(Rbar_eta)) (1 x R_eta-side),
// landing in the diagonal family (etabar, xi, etabar).
Vec s_prime_of_basis(TubeAlgebra& tube, int x) {
  Evaluator& ev = tube.evaluator();
  const TubeBasisElement& e = tube.basis_element(x);
  const int xi = e.xi, eta = e.zeta, eb = ev.dual(e.zeta);
  TreeVector m1 = ev.compose(ev.right_tensor(tube.as_tree_vector(x), eb),
                             ev.left_tensor(xi, ev.cup(eta, true)));
  TreeVector full = ev.compose(
      ev.right_tensor(ev.right_tensor(ev.cap(eta, false), xi), eb),
      ev.left_tensor(eb, m1));
  full *= ev.d(xi);
  return tube.coefficients_of(full);
}

// Inverse twist on a diagonal basis tube: T'^{-1}|p,b2><p,b1| is the tube
// (xi,p,xi) given by (tree b1)^* o xi(tree b2).
Vec t_prime_inverse_of_basis(TubeAlgebra& tube, int x) {
  Evaluator& ev = tube.evaluator();
  const TubeBasisElement& e = tube.basis_element(x);
  TreeVector t2 = ev.basis_vector(e.p, {e.zeta, e.eta}, e.b2);
  TreeVector t1 = ev.basis_vector(e.p, {e.xi, e.zeta}, e.b1);
  TreeVector full = ev.compose(ev.right_tensor(ev.adjoint(t1), e.eta),
                               ev.left_tensor(e.xi, t2));
  return tube.coefficients_of(full);
}

// Expands central vectors over the diagonal sextuple families and applies a
// per-basis-element linear map given by `image`.
template <typename ImageFn>
Vec apply_diagonal_map(TubeAlgebra& tube, const Vec& z, ImageFn image,
                       std::map<int, Vec>& cache) {
  Vec out = Vec::Zero(tube.dim());
  for (int x = 0; x < tube.dim(); ++x) {
    if (std::abs(z(x)) < 1e-13) continue;
    const TubeBasisElement& e = tube.basis_element(x);
    if (e.xi != e.eta)
      throw Error(ErrorKind::DimensionMismatch,
                  "central vector has weight outside the diagonal sectors");
    auto it = cache.find(x);
    if (it == cache.end()) it = cache.emplace(x, image(tube, x)).first;
    out += z(x) * it->second;
  }
  return out;
}

// Coefficients c with sum_a c(a) q_a = w; residual above tol means w left
// the span of the projections.
Vec in_projection_basis(const TubeAlgebra& tube, const CenterData& center,
                        const Vec& w, const char* what) {
  const int r = center.rank();
  Mat Q(tube.dim(), r);
  for (int a = 0; a < r; ++a) Q.col(a) = center.projections[a];
  const Vec c = Q.colPivHouseholderQr().solve(w);
  if ((Q * c - w).norm() > 1e-7 * std::max(1.0, w.norm()))
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " does not stay inside the center");
  return c;
}

Vec twist_eigenvalues(TubeAlgebra& tube, const CenterData& center,
                      const Vec& element, const char* what) {
  const int r = center.rank();
  Vec tau(r);
  for (int a = 0; a < r; ++a) {
    const Vec& q = center.projections[a];
    const Vec w = tube.multiply(element, q);
    const cd lam = q.dot(w) / q.dot(q);
    if ((w - lam * q).norm() > 1e-7 * std::max(1.0, w.norm()))
      throw Error(ErrorKind::NotDiagonal,
                  std::string(what) +
                      " is not diagonal on the minimal projections");
    tau(a) = lam;
  }
  return tau;
}

long long round9(double v) { return std::llround(v * 1e9); }

double principal_angle(cd z) {
  double a = std::arg(z) / (2.0 * kPi);
  a -= std::floor(a);
  if (a > 1.0 - 1e-12) a = 0.0;
  return a;
}

}  // namespace

Mat s_prime_action(TubeAlgebra& tube, const CenterData& center) {
  const int r = center.rank();
  std::map<int, Vec> cache;
  Mat sp(r, r);
  for (int a = 0; a < r; ++a) {
    const Vec w = apply_diagonal_map(tube, center.projections[a],
                                     s_prime_of_basis, cache);
    sp.col(a) = in_projection_basis(tube, center, w, "the S' image");
  }
  return sp;
}

Vec t_prime_action(TubeAlgebra& tube, const CenterData& center) {
  return twist_eigenvalues(tube, center, tube.twist_element(), "the twist");
}

Vec t_prime_inverse_action(TubeAlgebra& tube, const CenterData& center) {
  const int r = center.rank();
  std::map<int, Vec> cache;
  Vec tau(r);
  for (int a = 0; a < r; ++a) {
    const Vec& q = center.projections[a];
    const Vec w = apply_diagonal_map(tube, q, t_prime_inverse_of_basis, cache);
    const cd lam = q.dot(w) / q.dot(q);
    if ((w - lam * q).norm() > 1e-7 * std::max(1.0, w.norm()))
      throw Error(ErrorKind::NotDiagonal,
                  "the inverse twist is not diagonal on the projections");
    tau(a) = lam;
  }
  return tau;
}

TubeModularExtraction extract_modular_data(TubeAlgebra& tube,
                                           const CenterData& center) {
  TubeModularExtraction ex;
  const int r = center.rank();
  ex.s_prime = s_prime_action(tube, center);
  ex.t_prime = t_prime_action(tube, center);

  // Mapping class relations for the torus action in the projection basis.
  const Mat sp2 = ex.s_prime * ex.s_prime;
  const Mat st = ex.s_prime * Mat(ex.t_prime.asDiagonal());
  ex.relations.add_residual(
      "s-prime-fourth-power",
      (sp2 * sp2 - Mat::Identity(r, r)).cwiseAbs().maxCoeff(), 1e-8);
  ex.relations.add_residual("st-cubed-is-s-squared",
                            (st * st * st - sp2).cwiseAbs().maxCoeff(), 1e-8);
  const Vec tinv = t_prime_inverse_action(tube, center);
  ex.relations.add_residual(
      "twist-inverse-consistency",
      (ex.t_prime.cwiseProduct(tinv) - Vec::Ones(r)).cwiseAbs().maxCoeff(),
      1e-8);

  // Read off numerical modular data.  In the minimal-projection basis the S'
  // matrix carries a d_b/d_a weight relative to the symmetric S matrix, with
  // the dimensions recoverable from the gram norms <q_a, q_a> = d_a^2/lambda.
  // Entries are conjugated, the vacuum moved first, and the rest ordered
  // deterministically by (twist angle, dimension, S column).
  const double lambda = tube.system().lambda();
  Eigen::VectorXd dvec(r);
  for (int a = 0; a < r; ++a) {
    const cd g = tube.inner(center.projections[a], center.projections[a]);
    dvec(a) = std::sqrt(std::max(0.0, g.real()) * lambda);
  }
  Mat S_raw(r, r);
  for (int b = 0; b < r; ++b)
    for (int a = 0; a < r; ++a)
      S_raw(b, a) = std::conj(ex.s_prime(b, a) * dvec(b) / dvec(a));
  const Vec t_raw = ex.t_prime.conjugate();

  std::vector<int> vacua;
  for (int i = 0; i < r; ++i) {
    if (std::abs(t_raw(i) - cd(1.0)) > 1e-6) continue;
    bool positive = true;
    for (int k = 0; k < r && positive; ++k)
      positive = std::abs(S_raw(k, i).imag()) < 1e-6 && S_raw(k, i).real() > 1e-9;
    if (positive) vacua.push_back(i);
  }
  if (vacua.size() != 1)
    throw Error(ErrorKind::VacuumNotUnique,
                "expected exactly one vacuum candidate, found " +
                    std::to_string(vacua.size()));
  const int vac = vacua.front();

  std::vector<int> rest;
  for (int i = 0; i < r; ++i)
    if (i != vac) rest.push_back(i);
  auto key = [&](int i) {
    std::vector<long long> k{round9(principal_angle(t_raw(i))),
                             round9(lambda * S_raw(vac, i).real())};
    for (int s = 0; s < r; ++s) {
      k.push_back(round9(S_raw(s, i).real()));
      k.push_back(round9(S_raw(s, i).imag()));
    }
    return k;
  };
  std::sort(rest.begin(), rest.end(),
            [&](int a, int b) { return key(a) < key(b); });
  ex.order.assign(1, vac);
  ex.order.insert(ex.order.end(), rest.begin(), rest.end());

  ModularData md;
  md.name = tube.system().name() + "-double";
  md.lambda = lambda;
  md.tolerance = 1e-8;
  md.S = Mat(r, r);
  md.t = Vec(r);
  for (int i = 0; i < r; ++i) {
    md.t(i) = t_raw(ex.order[i]);
    for (int k = 0; k < r; ++k) md.S(i, k) = S_raw(ex.order[i], ex.order[k]);
    md.labels.push_back(std::to_string(i));
  }
  md.provenance.emplace_back("derived-from", tube.system().name());
  md.provenance.emplace_back("method", "tube-algebra-center");
  ex.md = md;

  ex.relations.add_residual(
      "vacuum-normalisation",
      std::abs(md.S(0, 0) - cd(1.0 / lambda, 0.0)), 1e-6,
      "S(0,0) = 1/lambda");
  ex.relations.merge(validate_verlinde_axioms(md));
  return ex;
}

ModularData modular_data_from_tube(TubeAlgebra& tube,
                                   const CenterData& center) {
  TubeModularExtraction ex = extract_modular_data(tube, center);
  if (!ex.relations.ok()) {
    std::string bad;
    for (const auto& c : ex.relations.checks)
      if (!c.ok) bad += (bad.empty() ? "" : ", ") + c.name;
    throw Error(ErrorKind::AxiomFailure,
                "derived data violates modular axioms (" + bad + ")");
  }
  return ex.md;
}

ValidationReport tube_inner_orthonormality_check(
    const TubeAlgebra& tube, const CenterData& center,
    const TubeModularExtraction& ex) {
  ValidationReport rep;
  const int r = center.rank();
  const double lambda = ex.md.lambda;
  double resid = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const double di = lambda * ex.md.S(0, i).real();
      const double dj = lambda * ex.md.S(0, j).real();
      const cd g = tube.inner(center.projections[ex.order[i]],
                              center.projections[ex.order[j]]) *
                   lambda / (di * dj);
      resid = std::max(resid, std::abs(g - (i == j ? cd(1.0) : cd(0.0))));
    }
  rep.add_residual("rescaled-projections-orthonormal", resid, 1e-6,
                   "<sqrt(lambda)/d_i q_i, sqrt(lambda)/d_j q_j> = delta_ij");
  return rep;
}

}  // namespace tvo
