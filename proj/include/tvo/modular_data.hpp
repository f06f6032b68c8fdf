#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvo/numeric.hpp"
#include "tvo/report.hpp"

namespace tvo {

// Numerical modular data (S, t): the unitary symmetric S matrix and the
// diagonal of T, with the vacuum at index 0 and t stored as unit complex
// numbers.  lambda is the global dimension scale, so d_i = lambda * S(0,i).
struct ModularData {
  std::string name;
  std::vector<std::string> labels;
  Mat S;
  Vec t;
  double lambda = 1.0;
  double tolerance = 1e-8;
  // Free-form origin notes, serialised in insertion order.
  std::vector<std::pair<std::string, std::string>> provenance;

  int rank() const { return static_cast<int>(t.size()); }
  std::vector<double> dims() const;
};

// Checks the defining axioms: S unitary and symmetric, S^2 a charge
// conjugation permutation fixing the vacuum, S(i,0) real and nonzero,
// Verlinde coefficients nonnegative integers, |t_i| = 1 and t_0 = 1.
// (Compatibility of T with the full mapping class group representation is
// certified upstream, where S and T come from the same algebra action.)
ValidationReport validate_verlinde_axioms(const ModularData& md);

// Verlinde fusion coefficients N_{ij}^k, rounded; throws Error(NonIntegral)
// if any coefficient is farther than 1e-6 from a nonnegative integer.
std::vector<std::vector<std::vector<long long>>> fusion_rules(
    const ModularData& md);

// Complex conjugate data (mirror image theory).
ModularData conjugate_data(const ModularData& md);

// Label permutation perm with a.S == P b.S P^T, a.t == P b.t (within tol),
// or nullopt; perm[i] is the index in b matching label i of a.
std::optional<std::vector<int>> match_up_to_permutation(const ModularData& a,
                                                        const ModularData& b,
                                                        double tol);

}  // namespace tvo
