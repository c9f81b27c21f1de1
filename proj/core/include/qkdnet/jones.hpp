#pragma once

#include <array>
#include <complex>

namespace qkdnet {

class Rng;

using Complex = std::complex<double>;
using PolarizationState = std::array<Complex, 2>;

/// 2x2 Jones matrix, row major: [[m00, m01], [m10, m11]].
struct JonesMatrix {
  Complex m00, m01, m10, m11;

  JonesMatrix operator*(const JonesMatrix& rhs) const;
  PolarizationState apply(const PolarizationState& v) const;

  JonesMatrix adjoint() const;
  Complex determinant() const;
  /// Throws std::invalid_argument when singular.
  JonesMatrix inverse() const;

  bool is_unitary(double tol = 1e-10) const;
  double max_abs_diff(const JonesMatrix& other) const;

  static JonesMatrix identity();
  static JonesMatrix rotation(double theta);
  /// Haar-ish random element of U(2), for property tests.
  static JonesMatrix random_unitary(Rng& rng);
};

/// Faraday mirror: [[0, -1], [-1, 0]].
JonesMatrix faraday_mirror();

/// Round trip through a birefringent channel T and a Faraday mirror:
/// T^-1 FM T, which equals e^{i phi} FM for any unitary T. Throws
/// std::invalid_argument when T is not unitary within 1e-10.
JonesMatrix roundtrip_jones(const JonesMatrix& t);

/// Largest entry-wise deviation of m from the nearest e^{i phi} FM.
double faraday_form_residual(const JonesMatrix& m);

Complex inner_product(const PolarizationState& a, const PolarizationState& b);

}  // namespace qkdnet
