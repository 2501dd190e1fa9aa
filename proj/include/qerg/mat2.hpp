#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "qerg/bloch.hpp"

namespace qerg {

using complexd = std::complex<double>;

/// Dense complex 2x2 matrix, row major. A qubit never needs more linear
/// algebra than this, so no external matrix library is pulled in.
struct Mat2 {
  std::array<complexd, 4> a{};

  complexd& operator()(int i, int j) { return a[2 * i + j]; }
  const complexd& operator()(int i, int j) const { return a[2 * i + j]; }

  static Mat2 of(complexd m00, complexd m01, complexd m10, complexd m11) {
    Mat2 m;
    m.a = {m00, m01, m10, m11};
    return m;
  }
  static Mat2 identity() { return of(1.0, 0.0, 0.0, 1.0); }
  static Mat2 zero() { return {}; }
};

inline Mat2 operator+(const Mat2& lhs, const Mat2& rhs) {
  Mat2 out;
  for (int i = 0; i < 4; ++i) out.a[i] = lhs.a[i] + rhs.a[i];
  return out;
}

inline Mat2 operator-(const Mat2& lhs, const Mat2& rhs) {
  Mat2 out;
  for (int i = 0; i < 4; ++i) out.a[i] = lhs.a[i] - rhs.a[i];
  return out;
}

inline Mat2 operator*(const complexd& s, const Mat2& m) {
  Mat2 out;
  for (int i = 0; i < 4; ++i) out.a[i] = s * m.a[i];
  return out;
}

inline Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
  Mat2 out;
  out.a[0] = lhs.a[0] * rhs.a[0] + lhs.a[1] * rhs.a[2];
  out.a[1] = lhs.a[0] * rhs.a[1] + lhs.a[1] * rhs.a[3];
  out.a[2] = lhs.a[2] * rhs.a[0] + lhs.a[3] * rhs.a[2];
  out.a[3] = lhs.a[2] * rhs.a[1] + lhs.a[3] * rhs.a[3];
  return out;
}

inline Mat2 adjoint(const Mat2& m) {
  return Mat2::of(std::conj(m.a[0]), std::conj(m.a[2]), std::conj(m.a[1]),
                  std::conj(m.a[3]));
}

inline complexd trace(const Mat2& m) { return m.a[0] + m.a[3]; }

inline double frobenius_norm(const Mat2& m) {
  double s = 0.0;
  for (const auto& v : m.a) s += std::norm(v);
  return std::sqrt(s);
}

inline Mat2 pauli_x() { return Mat2::of(0.0, 1.0, 1.0, 0.0); }
inline Mat2 pauli_y() {
  return Mat2::of(0.0, complexd{0, -1}, complexd{0, 1}, 0.0);
}
inline Mat2 pauli_z() { return Mat2::of(1.0, 0.0, 0.0, -1.0); }

/// The fixed system Hamiltonian H = -sigma_z = diag(-1, +1).
inline Mat2 hamiltonian() { return complexd{-1, 0} * pauli_z(); }

/// rho = (I + x sx + y sy + z sz) / 2.
inline Mat2 density_from_bloch(BlochVector b) {
  Mat2 rho;
  rho.a[0] = complexd{(1.0 + b.z) / 2.0, 0.0};
  rho.a[1] = complexd{b.x / 2.0, -b.y / 2.0};
  rho.a[2] = complexd{b.x / 2.0, b.y / 2.0};
  rho.a[3] = complexd{(1.0 - b.z) / 2.0, 0.0};
  return rho;
}

inline BlochVector bloch_from_density(const Mat2& rho) {
  return {2.0 * rho.a[1].real(), -2.0 * rho.a[1].imag(),
          rho.a[0].real() - rho.a[3].real()};
}

}  // namespace qerg
