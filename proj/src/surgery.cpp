#include "tvo/surgery.hpp"

#include <numeric>
#include <sstream>

#include "tvo/errors.hpp"

namespace tvo {

SurgeryPresentation SurgeryPresentation::chain(std::vector<long long> a) {
  SurgeryPresentation p;
  p.kind = Kind::Chain;
  p.coefficients = std::move(a);
  return p;
}

SurgeryPresentation SurgeryPresentation::star(long long q,
                                              std::vector<long long> legs) {
  SurgeryPresentation p;
  p.kind = Kind::Star;
  p.hub = q;
  p.legs = std::move(legs);
  return p;
}

std::string SurgeryPresentation::text() const {
  std::ostringstream os;
  if (kind == Kind::Chain) {
    os << "chain[";
    for (size_t i = 0; i < coefficients.size(); ++i)
      os << (i ? "," : "") << coefficients[i];
    os << "]";
  } else {
    os << "star(" << hub << ";";
    for (size_t i = 0; i < legs.size(); ++i) os << (i ? "," : "") << legs[i];
    os << ")";
  }
  return os.str();
}

std::vector<long long> continued_fraction(long long p, long long q) {
  if (q < 1 || q >= p || std::gcd(p, q) != 1)
    throw Error(ErrorKind::BadInput,
                "continued fraction needs 1 <= q < p coprime, got p=" +
                    std::to_string(p) + " q=" + std::to_string(q));
  std::vector<long long> a;
  while (q > 0) {
    const long long ai = (p + q - 1) / q;  // ceil(p/q)
    a.push_back(ai);
    const long long r = ai * q - p;
    p = q;
    q = r;
  }
  return a;
}

cd chain_invariant(const ModularData& md, const std::vector<long long>& a) {
  if (a.empty())
    throw Error(ErrorKind::EmptyChain,
                "empty chain; use the S^3 convention chain([1]) explicitly");
  const int r = md.rank();
  Vec v = md.S.col(0);
  for (size_t j = 0; j < a.size(); ++j) {
    for (int i = 0; i < r; ++i) v(i) *= unit_pow(md.t(i), a[j]);
    if (j + 1 < a.size()) v = md.S * v;
  }
  return (md.S * v)(0);
}

cd lens_invariant(const ModularData& md, long long p, long long q) {
  if (p == 1) return s3_invariant(md);
  if (p == 0 && (q == 1 || q == -1)) return s2xs1_invariant(md);
  if (p < 0)
    throw Error(ErrorKind::BadInput,
                "lens space orientation: use the conjugate data for L(-p,q)");
  return chain_invariant(md, continued_fraction(p, q));
}

cd lens_closed_form_p1(const ModularData& md, long long p) {
  cd z = 0.0;
  for (int i = 0; i < md.rank(); ++i)
    z += unit_pow(md.t(i), p) * md.S(i, 0) * md.S(i, 0);
  return z;
}

cd lens_closed_form_p2(const ModularData& md, long long p) {
  if (((p % 2) + 2) % 2 != 1)
    throw Error(ErrorKind::BadCongruence,
                "the L(p,2) closed form needs odd p, got " + std::to_string(p));
  const int r = md.rank();
  cd z = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      z += unit_pow(md.t(i), (p + 1) / 2) * unit_pow(md.t(j), 2) *
           md.S(i, 0) * md.S(j, 0) * md.S(i, j);
  return z;
}

cd lens_closed_form_p3(const ModularData& md, long long p) {
  const int r = md.rank();
  const long long mod = ((p % 3) + 3) % 3;
  cd z = 0.0;
  if (mod == 1) {
    // Continued fraction [a,2,2] with a = (p+2)/3: the chain is the
    // two-legged star at its middle vertex, so by the star lemma (r = 2,
    // where the 1/S_{j0}^{r-2} factor is trivial):
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
          z += unit_pow(md.t(i), (p + 2) / 3) * unit_pow(md.t(j), 2) *
               unit_pow(md.t(k), 2) * md.S(i, 0) * md.S(k, 0) * md.S(i, j) *
               md.S(k, j);
  } else if (mod == 2) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        z += unit_pow(md.t(i), (p + 1) / 3) * unit_pow(md.t(j), 3) *
             md.S(i, 0) * md.S(j, 0) * md.S(i, j);
  } else {
    throw Error(ErrorKind::BadCongruence,
                "the L(p,3) closed form needs p coprime to 3, got " +
                    std::to_string(p));
  }
  return z;
}

cd star_invariant(const ModularData& md, long long q,
                  const std::vector<long long>& legs) {
  if (legs.empty())
    throw Error(ErrorKind::BadInput, "star link needs at least one leg");
  const int r = md.rank();
  const int nl = static_cast<int>(legs.size());
  cd z = 0.0;
  for (int j = 0; j < r; ++j) {
    cd hub = unit_pow(md.t(j), q) * std::pow(md.S(j, 0), 2 - nl);
    for (long long p : legs) {
      cd leg = 0.0;
      for (int i = 0; i < r; ++i)
        leg += unit_pow(md.t(i), p) * md.S(i, 0) * md.S(i, j);
      hub *= leg;
    }
    z += hub;
  }
  return z;
}

cd j_star(const ModularData& md, int j, const std::vector<int>& leg_labels) {
  const int r = md.rank();
  if (j < 0 || j >= r)
    throw Error(ErrorKind::BadInput, "hub label out of range");
  cd z = std::pow(md.S(j, 0), 1 - static_cast<int>(leg_labels.size()));
  for (int i : leg_labels) {
    if (i < 0 || i >= r)
      throw Error(ErrorKind::BadInput, "leg label out of range");
    z *= md.S(i, j);
  }
  return z;
}

cd brieskorn_invariant(const ModularData& md, long long p, long long q,
                       long long r) {
  if (p < 2 || q < 2 || r < 2)
    throw Error(ErrorKind::BadInput,
                "Brieskorn spheres need exponents p,q,r >= 2");
  const int m = md.rank();
  cd z = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          z += unit_pow(md.t(i), p) * unit_pow(md.t(j), q) *
               unit_pow(md.t(k), r) * md.t(l) * md.S(i, 0) * md.S(j, 0) *
               md.S(k, 0) * md.S(i, l) * md.S(j, l) * md.S(k, l) / md.S(l, 0);
  return z;
}

cd s3_invariant(const ModularData& md) { return chain_invariant(md, {1}); }

cd s2xs1_invariant(const ModularData& md) { return chain_invariant(md, {0}); }

}  // namespace tvo
