#pragma once

#include <map>
#include <memory>
#include <string>

#include "slzeros/eigen.hpp"
#include "slzeros/ensembles.hpp"
#include "slzeros/sl_core.hpp"

namespace slzeros::testing {

inline std::shared_ptr<const CumulativeWeight> omega_of(const std::string& name) {
  return std::make_shared<const CumulativeWeight>(builtin_weight(name));
}

/// Both eigen families for a preset, solved once per process.
inline const SturmLiouvilleBasis& basis_of(const std::string& name, int k_max) {
  static std::map<std::pair<std::string, int>, SturmLiouvilleBasis> cache;
  auto& slot = cache[{name, k_max}];
  if (!slot.cos_family) {
    auto omega = omega_of(name);
    slot.cos_family = std::make_shared<const EigenBasis>(
        eigen_solve(omega, BoundaryCondition::C, k_max));
    slot.sin_family = std::make_shared<const EigenBasis>(
        eigen_solve(omega, BoundaryCondition::D, k_max));
  }
  return slot;
}

}  // namespace slzeros::testing
