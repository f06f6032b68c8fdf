#pragma once

#include <string>
#include <vector>

#include "tvo/modular_data.hpp"

namespace tvo {

// A surgery description of a closed 3-manifold: either a chain of framed
// unknots (plumbing of the continued fraction of a lens space) or a star
// link with one q-framed hub and r framed meridian legs.
struct SurgeryPresentation {
  enum class Kind { Chain, Star };
  Kind kind = Kind::Chain;
  std::vector<long long> coefficients;  // chain framings a_1..a_n
  long long hub = 0;                    // star hub framing q
  std::vector<long long> legs;          // star leg framings p_1..p_r

  static SurgeryPresentation chain(std::vector<long long> a);
  static SurgeryPresentation star(long long q, std::vector<long long> p);
  std::string text() const;
};

struct InvariantValue {
  cd value;
  SurgeryPresentation presentation;
  std::string data_name;
  bool conjugated = false;  // evaluated on the mirror of the named data
};

// Descending continued fraction p/q = a_1 - 1/(a_2 - ... - 1/a_n) with all
// a_i >= 2; requires 1 <= q < p and gcd(p,q) = 1 (BadInput otherwise).
std::vector<long long> continued_fraction(long long p, long long q);

// Z of the plumbing along a chain with the given integer framings,
//   sum S_{i1,0} t_{i1}^{a1} S_{i1,i2} ... t_{in}^{an} S_{in,0},
// evaluated by n+1 matrix-vector products.  Throws Error(EmptyChain) for an
// empty list; S^3 is chain([1]) by convention (see s3_invariant).
cd chain_invariant(const ModularData& md, const std::vector<long long>& a);

// Lens space L(p,q).  Degenerate named cases: p = 1 is S^3 and (0, 1) is
// S^2 x S^1; otherwise requires 1 <= q < p coprime and evaluates the chain
// of the continued fraction.
cd lens_invariant(const ModularData& md, long long p, long long q);

// Independent closed-form specializations of the chain formula.
cd lens_closed_form_p1(const ModularData& md, long long p);  // L(p,1), any p
cd lens_closed_form_p2(const ModularData& md, long long p);  // L(p,2), p odd
cd lens_closed_form_p3(const ModularData& md, long long p);  // L(p,3), 3 - p
// p2/p3 throw Error(BadCongruence) when p is not in the stated class.

// Star link with hub framing q and single-vertex legs framed p_1..p_r:
//   sum_j t_j^q / S_{j0}^{r-2} * prod_k (sum_i t_i^{p_k} S_{i0} S_{ij}).
cd star_invariant(const ModularData& md, long long q,
                  const std::vector<long long>& legs);

// Colored invariant of the 0-framed star link: hub colored j, legs colored
// i_1..i_r; equals S_{i1,j} ... S_{ir,j} / S_{j0}^{r-1}.
cd j_star(const ModularData& md, int j, const std::vector<int>& leg_labels);

// Brieskorn sphere Sigma(p,q,r), p,q,r >= 2, as the independent quadruple
// sum (the three-legged star with hub framing 1).
cd brieskorn_invariant(const ModularData& md, long long p, long long q,
                       long long r);

cd s3_invariant(const ModularData& md);     // chain([1])
cd s2xs1_invariant(const ModularData& md);  // chain([0])

}  // namespace tvo
