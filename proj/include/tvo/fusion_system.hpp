#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "tvo/fusion_ring.hpp"
#include "tvo/numeric.hpp"
#include "tvo/report.hpp"

namespace tvo {

// Index of one F-symbol entry: the change-of-bracketing coefficient
//   T_{ij}^{m,a} T_{mk}^{l,b} = sum_{n,c,d} F^{ijk}_l[(m,a,b),(n,c,d)]
//                               i(T_{jk}^{n,c}) T_{in}^{l,d}.
struct FKey {
  int i, j, k, l;  // outer labels
  int m, a, b;     // left bracketing: m in i*j, vertex indices a, b
  int n, c, d;     // right bracketing: n in j*k, vertex indices c, d
  auto operator<=>(const FKey&) const = default;
};

// Fusion-ring data together with sparse F-symbols.  Entries absent from F are
// zero; blocks with a unit outer label must be identity (unit-triangle gauge).
struct FusionSystem {
  FusionRing ring;
  QuantumDims dims;
  std::map<FKey, cd> F;
  double tolerance = kDefaultTol;

  int rank() const { return ring.rank(); }
  int dual(int i) const { return ring.dual[i]; }
  double d(int i) const { return dims.d[i]; }
  double lambda() const { return dims.lambda; }
  const std::string& name() const { return ring.name; }
};

// Verifies unit-triangle gauge, per-block unitarity, and the pentagon
// coherence of the F-symbols (as the interchange law between grouped and
// iterated tensoring, checked on all vertex bases).  Throws
// Error(MissingEntry) when an admissible block has no stored entries at all.
ValidationReport validate_pentagon(const FusionSystem& fs);

// Built-in systems -----------------------------------------------------------

// Pointed system vec(Z/n, omega^k): cyclic fusion with associator
// omega(a,b,c) = exp(2 pi i k a floor((b+c)/n) / n).
FusionSystem vec_omega_cyclic(int n, int k);

// Rank-2 system with tau^2 = 1 + tau and the golden-ratio F-matrix.
FusionSystem fibonacci();

// Tambara-Yamagami system for Z/n with bicharacter chi(a,b) =
// exp(2 pi i chi a b / n) (chi coprime to n) and Frobenius-Schur sign +-1.
FusionSystem tambara_yamagami(int n, int chi, int sign);

// tambara_yamagami(2, 1, +1): labels 1, psi, sigma.
FusionSystem ising();

// Conjugates all F-blocks by seeded random unitaries of the fusion
// multiplicity spaces (identity on unit-leg spaces, preserving the gauge).
// Models a change of fusion-tree bases; all derived modular data must be
// invariant under it up to label permutation.
FusionSystem apply_tree_unitaries(const FusionSystem& fs, std::uint64_t seed);

// JSON persistence -----------------------------------------------------------

FusionSystem load_fusion_system(const std::string& path);
void save_fusion_system(const FusionSystem& fs, const std::string& path);
FusionSystem fusion_system_from_json_text(const std::string& text,
                                          const std::string& origin);
std::string fusion_system_to_json_text(const FusionSystem& fs);

}  // namespace tvo
