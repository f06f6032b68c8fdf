#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace tvo {

// Outcome of a structural validation: one named check per verified property,
// with the worst numerical residual observed for that check.
struct ValidationReport {
  struct Check {
    std::string name;
    bool ok = true;
    double residual = 0.0;
    std::string detail;
  };

  std::vector<Check> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.ok; });
  }

  double worst_residual() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.residual);
    return w;
  }

  void add(const std::string& name, bool ok, double residual,
           const std::string& detail = "") {
    checks.push_back({name, ok, residual, detail});
  }

  // Records a residual-driven check: passes iff residual <= tol.
  void add_residual(const std::string& name, double residual, double tol,
                    const std::string& detail = "") {
    checks.push_back({name, residual <= tol, residual, detail});
  }

  void merge(const ValidationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace tvo
