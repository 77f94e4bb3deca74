#pragma once

#include <array>
#include <complex>

#include "fluxsize/errors.hpp"

namespace fluxsize {

// Dimension tag for NambuMatrix entries.  Green's-function amplitudes carry
// 1/(J s) after the (2pi)^3 delta(q - q') factor is stripped (that factor
// becomes a grid weight on discrete momentum grids); correction kernels that
// have been contracted with hbar are dimensionless.
enum class NambuUnits { green_amplitude, dimensionless };

// 2x2 complex matrix in particle-hole (Nambu) space.  Imaginary-time objects
// are not Hermitian in general, so no Hermiticity is assumed or enforced.
struct NambuMatrix {
  using cd = std::complex<double>;
  std::array<cd, 4> m{};  // row-major: m[0]=a00, m[1]=a01, m[2]=a10, m[3]=a11
  NambuUnits units = NambuUnits::green_amplitude;

  cd& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
  const cd& operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

  NambuMatrix& operator+=(const NambuMatrix& o) {
    if (units != o.units) throw DomainError("NambuMatrix: adding mismatched units");
    for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)] += o.m[static_cast<std::size_t>(i)];
    return *this;
  }
  friend NambuMatrix operator+(NambuMatrix a, const NambuMatrix& b) { return a += b; }

  friend NambuMatrix operator-(const NambuMatrix& a, const NambuMatrix& b) {
    if (a.units != b.units) throw DomainError("NambuMatrix: subtracting mismatched units");
    NambuMatrix out = a;
    for (int i = 0; i < 4; ++i) out.m[static_cast<std::size_t>(i)] -= b.m[static_cast<std::size_t>(i)];
    return out;
  }

  friend NambuMatrix operator*(double s, NambuMatrix a) {
    for (auto& v : a.m) v *= s;
    return a;
  }
  friend NambuMatrix operator*(std::complex<double> s, NambuMatrix a) {
    for (auto& v : a.m) v *= s;
    return a;
  }

  // matrix product; units tag taken from the left factor
  friend NambuMatrix operator*(const NambuMatrix& a, const NambuMatrix& b) {
    NambuMatrix out;
    out.units = a.units;
    out(0, 0) = a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0);
    out(0, 1) = a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1);
    out(1, 0) = a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0);
    out(1, 1) = a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1);
    return out;
  }

  double max_abs() const;
  bool is_finite() const;
};

NambuMatrix nambu_identity(NambuUnits units = NambuUnits::dimensionless);
NambuMatrix pauli_x(NambuUnits units = NambuUnits::dimensionless);
NambuMatrix pauli_z(NambuUnits units = NambuUnits::dimensionless);

} // namespace fluxsize
