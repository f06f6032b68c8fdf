#include "tvo/modular_data.hpp"

#include <algorithm>
#include <cmath>

#include "tvo/errors.hpp"

namespace tvo {

std::vector<double> ModularData::dims() const {
  std::vector<double> out(rank());
  for (int i = 0; i < rank(); ++i) out[i] = lambda * S(0, i).real();
  return out;
}

ValidationReport validate_verlinde_axioms(const ModularData& md) {
  ValidationReport rep;
  const int r = md.rank();
  const double tol = md.tolerance;
  if (r == 0 || md.S.rows() != r || md.S.cols() != r) {
    rep.add("shape", false, 1.0, "S must be rank x rank and t length rank");
    return rep;
  }

  rep.add_residual("unitary",
                   (md.S * md.S.adjoint() - Mat::Identity(r, r))
                       .cwiseAbs()
                       .maxCoeff(),
                   tol, "S S^H = I");
  rep.add_residual("symmetric",
                   (md.S - md.S.transpose()).cwiseAbs().maxCoeff(), tol,
                   "S = S^T");

  // S^2 must be a permutation matrix (charge conjugation) that squares to
  // the identity and fixes the vacuum.
  const Mat C = md.S * md.S;
  double perm_resid = 0.0;
  std::vector<int> conj_of(r, -1);
  for (int j = 0; j < r; ++j) {
    int hit = -1;
    for (int i = 0; i < r; ++i) {
      const double a = std::abs(C(i, j));
      if (a > 0.5) {
        perm_resid = std::max(perm_resid, std::abs(C(i, j) - cd(1.0)));
        if (hit >= 0) perm_resid = std::max(perm_resid, 1.0);
        hit = i;
      } else {
        perm_resid = std::max(perm_resid, a);
      }
    }
    conj_of[j] = hit;
  }
  bool involution = true;
  for (int j = 0; j < r; ++j)
    involution = involution && conj_of[j] >= 0 && conj_of[conj_of[j]] == j;
  rep.add("charge-conjugation",
          involution && conj_of[0] == 0 && perm_resid <= tol, perm_resid,
          "S^2 is an involutive permutation fixing the vacuum");

  double row_resid = 0.0;
  bool row_nonzero = true;
  for (int i = 0; i < r; ++i) {
    row_resid = std::max(row_resid, std::abs(md.S(i, 0).imag()));
    row_nonzero = row_nonzero && std::abs(md.S(i, 0).real()) > tol;
  }
  rep.add("vacuum-column-real", row_nonzero && row_resid <= tol, row_resid,
          "S(i,0) real and nonzero");

  double integral = 0.0;
  bool nonneg = true;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        cd acc = 0.0;
        for (int l = 0; l < r; ++l)
          acc += md.S(i, l) * md.S(j, l) * std::conj(md.S(k, l)) / md.S(0, l);
        const double rounded = std::round(acc.real());
        integral = std::max(integral, std::abs(acc - cd(rounded)));
        nonneg = nonneg && rounded > -0.5;
      }
  // Rounding error accumulates over the rank-long Verlinde sums, so this
  // check keeps a 1e-6 floor; an explicit looser tolerance still wins.
  rep.add("verlinde-integrality", nonneg && integral <= std::max(tol, 1e-6),
          integral, "fusion coefficients are nonnegative integers");

  double unit_circle = 0.0;
  for (int i = 0; i < r; ++i)
    unit_circle = std::max(unit_circle, std::abs(std::abs(md.t(i)) - 1.0));
  rep.add_residual("t-unitary", unit_circle, tol, "|t_i| = 1");
  rep.add_residual("t-vacuum", std::abs(md.t(0) - cd(1.0)), tol, "t_0 = 1");

  return rep;
}

std::vector<std::vector<std::vector<long long>>> fusion_rules(
    const ModularData& md) {
  const int r = md.rank();
  std::vector<std::vector<std::vector<long long>>> N(
      r, std::vector<std::vector<long long>>(r, std::vector<long long>(r, 0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        cd acc = 0.0;
        for (int l = 0; l < r; ++l)
          acc += md.S(i, l) * md.S(j, l) * std::conj(md.S(k, l)) / md.S(0, l);
        const long long rounded = std::llround(acc.real());
        if (std::abs(acc - cd(static_cast<double>(rounded))) > 1e-6 ||
            rounded < 0)
          throw Error(ErrorKind::NonIntegral,
                      "Verlinde coefficient at (" + std::to_string(i) + "," +
                          std::to_string(j) + "," + std::to_string(k) +
                          ") is not a nonnegative integer");
        N[i][j][k] = rounded;
      }
  return N;
}

ModularData conjugate_data(const ModularData& md) {
  ModularData out = md;
  out.S = md.S.conjugate();
  out.t = md.t.conjugate();
  out.provenance.emplace_back("conjugated", "true");
  return out;
}

namespace {

bool extend_match(const ModularData& a, const ModularData& b, double tol,
                  std::vector<int>& perm, std::vector<bool>& used, int i) {
  const int r = a.rank();
  if (i == r) return true;
  for (int j = 0; j < r; ++j) {
    if (used[j]) continue;
    if (std::abs(a.t(i) - b.t(j)) > tol) continue;
    bool ok = true;
    for (int k = 0; k < i && ok; ++k)
      ok = std::abs(a.S(i, k) - b.S(j, perm[k])) <= tol;
    if (!ok || std::abs(a.S(i, i) - b.S(j, j)) > tol) continue;
    perm[i] = j;
    used[j] = true;
    if (extend_match(a, b, tol, perm, used, i + 1)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> match_up_to_permutation(const ModularData& a,
                                                        const ModularData& b,
                                                        double tol) {
  if (a.rank() != b.rank()) return std::nullopt;
  const int r = a.rank();
  std::vector<int> perm(r, -1);
  std::vector<bool> used(r, false);
  if (!extend_match(a, b, tol, perm, used, 0)) return std::nullopt;
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k)
      if (std::abs(a.S(i, k) - b.S(perm[i], perm[k])) > tol)
        return std::nullopt;
  return perm;
}

}  // namespace tvo
