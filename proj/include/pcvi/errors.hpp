#pragma once

#include <stdexcept>
#include <string>

namespace pcvi {

// A caller violated a physics-level contract (wrong element kind, wrong
// propagation direction, mismatched vortex charges, non-positive frequency).
class ContractViolation : public std::runtime_error {
public:
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// A numerical-quality gate fired (azimuthal Nyquist limit, frame aliasing,
// rejection-sampling efficiency floor). The inputs are legal but the result
// would be untrustworthy.
class NumericalQualityError : public std::runtime_error {
public:
  explicit NumericalQualityError(const std::string& what) : std::runtime_error(what) {}
};

// A setup file failed schema validation.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pcvi
