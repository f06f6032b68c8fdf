#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "tvo/errors.hpp"
#include "tvo/expression.hpp"

using namespace tvo;

namespace {

std::vector<FusionSystem> sample_systems() {
  std::vector<FusionSystem> v;
  v.push_back(fibonacci());
  v.push_back(ising());
  v.push_back(vec_omega_cyclic(3, 1));
  v.push_back(tambara_yamagami(3, 1, 1));
  v.push_back(tambara_yamagami(3, 2, -1));
  return v;
}

}  // namespace

TEST_CASE("identity expression evaluates to unit coefficients") {
  FusionSystem fs = fibonacci();
  Evaluator ev(fs);
  for (int rho = 0; rho < fs.rank(); ++rho) {
    TreeVector id = eval_expression(ev, Expr::basis(rho, {rho}, 0));
    CHECK(std::abs(id.scalar_value() - 1.0) < 1e-14);
  }
}

TEST_CASE("tree bases are orthonormal and complete") {
  for (FusionSystem fs : sample_systems()) {
    Evaluator ev(fs);
    // Left tensoring is built from unitary regroupings, so it must preserve
    // the pairwise inner products of basis morphisms.
    for (int rho = 0; rho < fs.rank(); ++rho)
      for (int c = 0; c < fs.rank(); ++c) {
        Word w{1 % fs.rank(), fs.rank() - 1};
        int dim = ev.hom_dim(c, w);
        if (dim == 0) continue;
        std::vector<TreeVector> lifted;
        for (int t = 0; t < dim; ++t)
          lifted.push_back(ev.left_tensor(rho, ev.basis_vector(c, w, t)));
        // rho(V)^* rho(W) = rho(V^* W) = delta_{st} rho(id_c), whose
        // Hilbert-Schmidt weight is the number of fusion channels of rho*c.
        double channels = 0;
        for (int e = 0; e < fs.rank(); ++e) channels += fs.ring.n(rho, c, e);
        for (int s = 0; s < dim; ++s)
          for (int t = 0; t < dim; ++t) {
            cd got = TreeVector::dot(lifted[s], lifted[t]);
            cd want = (s == t) ? cd(channels) : cd(0.0);
            CHECK(std::abs(got - want) < 1e-10);
          }
      }
  }
}

TEST_CASE("zig-zag identities hold with the derived duality coefficients") {
  for (FusionSystem fs : sample_systems()) {
    Evaluator ev(fs);
    for (int rho = 0; rho < fs.rank(); ++rho) {
      const int rb = ev.dual(rho);
      // (Rbar^* (x) rho) . rho(R) = 1/d(rho), exact by construction.
      TreeVector lhs = ev.compose(ev.right_tensor(ev.cap(rho, true), rho),
                                  ev.left_tensor(rho, ev.cup(rho, false)));
      INFO(fs.name(), " rho=", rho);
      CHECK(std::abs(lhs.scalar_value() - 1.0 / ev.d(rho)) < 1e-12);

      // (R^* (x) rhobar) . rhobar(Rbar) = 1/d(rho): tested, not assumed.
      TreeVector rhs = ev.compose(ev.right_tensor(ev.cap(rho, false), rb),
                                  ev.left_tensor(rb, ev.cup(rho, true)));
      CHECK(std::abs(rhs.scalar_value() - 1.0 / ev.d(rho)) < 1e-10);
    }
  }
}

TEST_CASE("duality F scalar has modulus 1/d") {
  for (FusionSystem fs : sample_systems()) {
    Evaluator ev(fs);
    for (int rho = 0; rho < fs.rank(); ++rho) {
      cd f = ev.f_scalar(rho);
      CHECK(std::abs(std::abs(f) - 1.0 / ev.d(rho)) < 1e-10);
      if (ev.dual(rho) == rho) {
        // self-dual: f = kappa/d with kappa = +-1
        double kappa = f.real() * ev.d(rho);
        CHECK(std::abs(std::abs(kappa) - 1.0) < 1e-10);
        CHECK(std::abs(f.imag()) < 1e-12);
      }
    }
  }
}

TEST_CASE("Ising and TY self-dual object carries the chosen FS sign") {
  Evaluator plus(tambara_yamagami(3, 1, 1));
  CHECK(std::abs(plus.f_scalar(3) - cd(1.0 / std::sqrt(3.0))) < 1e-12);
  Evaluator minus(tambara_yamagami(3, 1, -1));
  CHECK(std::abs(minus.f_scalar(3) + cd(1.0 / std::sqrt(3.0))) < 1e-12);
}

TEST_CASE("composition type errors raise TypeMismatch") {
  FusionSystem fs = fibonacci();
  Evaluator ev(fs);
  ExprPtr bad = Expr::compose(Expr::basis(1, {1, 1}, 0), Expr::basis(1, {1, 1}, 0));
  try {
    eval_expression(ev, bad);
    FAIL("expected TypeMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TypeMismatch);
  }
}

TEST_CASE("Frobenius maps are conjugate-linear isometries generating S3") {
  for (FusionSystem fs : sample_systems()) {
    Evaluator ev(fs);
    for (int rho = 0; rho < fs.rank(); ++rho)
      for (int eta = 0; eta < fs.rank(); ++eta)
        for (int zeta = 0; zeta < fs.rank(); ++zeta) {
          int dim = fs.ring.n(rho, eta, zeta);
          for (int t = 0; t < dim; ++t) {
            TreeVector a = ev.basis_vector(zeta, {rho, eta}, t);
            cd phase = unit_root(3, 17);  // arbitrary test phase
            TreeVector ap = a;
            ap *= phase;

            TreeVector ta = frobenius_tilde(ev, a);
            TreeVector ha = frobenius_hat(ev, a);
            // isometry
            CHECK(std::abs(ta.norm() - 1.0) < 1e-10);
            CHECK(std::abs(ha.norm() - 1.0) < 1e-10);
            // conjugate linearity
            TreeVector tap = frobenius_tilde(ev, ap);
            TreeVector diff = tap;
            TreeVector expect = ta;
            expect *= std::conj(phase);
            expect *= -1.0;
            diff += expect;
            CHECK(diff.norm() < 1e-10);

            // involutions up to the Frobenius-Schur sign of the rotated slot:
            // tilde^2 = kappa(rho) id, hat^2 = kappa(eta) id
            double sr = ev.fs_sign(rho) ? ev.fs_sign(rho) : 1.0;
            double se = ev.fs_sign(eta) ? ev.fs_sign(eta) : 1.0;
            TreeVector t2 = frobenius_tilde(ev, ta);
            TreeVector d2 = t2;
            TreeVector ma = a;
            ma *= -sr;
            d2 += ma;
            CHECK(d2.norm() < 1e-9);

            TreeVector h2 = frobenius_hat(ev, ha);
            TreeVector d3 = h2;
            TreeVector mb = a;
            mb *= -se;
            d3 += mb;
            CHECK(d3.norm() < 1e-9);

            // braid relation: (tilde hat)^3 = id exactly
            TreeVector x = a;
            for (int rep = 0; rep < 3; ++rep)
              x = frobenius_tilde(ev, frobenius_hat(ev, x));
            TreeVector d4 = x;
            TreeVector mc = a;
            mc *= -1.0;
            d4 += mc;
            CHECK(d4.norm() < 1e-9);
          }
        }
  }
}
