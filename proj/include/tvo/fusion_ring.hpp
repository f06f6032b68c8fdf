#pragma once

#include <string>
#include <vector>

#include "tvo/report.hpp"

namespace tvo {

// A based fusion ring: labels 0..rank-1 with label 0 the unit, a dual
// involution, and non-negative structure constants N[i][j][k] counting the
// multiplicity of k in i*j.
struct FusionRing {
  std::string name;
  std::vector<std::string> labels;
  std::vector<int> dual;
  std::vector<std::vector<std::vector<int>>> N;

  int rank() const { return static_cast<int>(labels.size()); }
  int n(int i, int j, int k) const { return N[i][j][k]; }

  static FusionRing with_rank(std::string name, int rank);
};

struct QuantumDims {
  std::vector<double> d;   // d[0] = 1, all >= 1
  double lambda = 0.0;     // sum of d_i^2
  double residual = 0.0;   // worst |d_i d_j - sum_k N_ijk d_k|
};

// Checks unit laws, dual involution and duality pairing, associativity and
// the Frobenius reciprocity symmetries of N.
ValidationReport validate_fusion_ring(const FusionRing& ring);

// Perron-Frobenius dimensions: d_i is the spectral radius of the fusion
// matrix N_i, verified against d_i d_j = sum_k N_ijk d_k.
// Throws Error(NoPositiveSolution) when no positive solution exists.
QuantumDims quantum_dims(const FusionRing& ring, double tol = 1e-9);

}  // namespace tvo
