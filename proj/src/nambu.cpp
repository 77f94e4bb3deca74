#include "fluxsize/nambu.hpp"

#include <cmath>

namespace fluxsize {

double NambuMatrix::max_abs() const {
  double out = 0.0;
  for (const auto& v : m) out = std::max(out, std::abs(v));
  return out;
}

bool NambuMatrix::is_finite() const {
  for (const auto& v : m)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

NambuMatrix nambu_identity(NambuUnits units) {
  NambuMatrix out;
  out.units = units;
  out(0, 0) = 1.0;
  out(1, 1) = 1.0;
  return out;
}

NambuMatrix pauli_x(NambuUnits units) {
  NambuMatrix out;
  out.units = units;
  out(0, 1) = 1.0;
  out(1, 0) = 1.0;
  return out;
}

NambuMatrix pauli_z(NambuUnits units) {
  NambuMatrix out;
  out.units = units;
  out(0, 0) = 1.0;
  out(1, 1) = -1.0;
  return out;
}

} // namespace fluxsize
