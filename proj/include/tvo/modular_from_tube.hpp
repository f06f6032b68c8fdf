#pragma once

#include <vector>

#include "tvo/modular_data.hpp"
#include "tvo/report.hpp"
#include "tvo/tube_algebra.hpp"

namespace tvo {

// The two mapping-torus actions on the tube center, their matrices in the
// minimal-projection basis, and the modular data read off from them.
struct TubeModularExtraction {
  Mat s_prime;             // S'(q_a) = sum_b s_prime(b,a) q_b
  Vec t_prime;             // T'(q_a) = t_prime(a) q_a
  std::vector<int> order;  // order[i] = projection index of label i
  ModularData md;
  ValidationReport relations;  // S'^4 = 1, (S'T')^3 = S'^2, axiom checks
};

// Matrix of the S' action in the projection basis.
Mat s_prime_action(TubeAlgebra& tube, const CenterData& center);

// Diagonal of the T' action (multiplication by the twist element); throws
// Error(NotDiagonal) if a projection fails to be an eigenvector.
Vec t_prime_action(TubeAlgebra& tube, const CenterData& center);

// Diagonal of the inverse twist computed from its own tube formula rather
// than by inverting t_prime; used as a consistency cross-check.
Vec t_prime_inverse_action(TubeAlgebra& tube, const CenterData& center);

TubeModularExtraction extract_modular_data(TubeAlgebra& tube,
                                           const CenterData& center);

// Convenience wrapper returning just the modular data; throws
// Error(VacuumNotUnique) or Error(AxiomFailure) when extraction fails.
ModularData modular_data_from_tube(TubeAlgebra& tube,
                                   const CenterData& center);

// The rescaled projections sqrt(lambda)/d_i q_i must be orthonormal in the
// tube inner product.
ValidationReport tube_inner_orthonormality_check(
    const TubeAlgebra& tube, const CenterData& center,
    const TubeModularExtraction& ex);

}  // namespace tvo
