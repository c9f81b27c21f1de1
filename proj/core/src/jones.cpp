#include "qkdnet/jones.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qkdnet/rng.hpp"

namespace qkdnet {

JonesMatrix JonesMatrix::operator*(const JonesMatrix& rhs) const {
  return JonesMatrix{
      m00 * rhs.m00 + m01 * rhs.m10, m00 * rhs.m01 + m01 * rhs.m11,
      m10 * rhs.m00 + m11 * rhs.m10, m10 * rhs.m01 + m11 * rhs.m11};
}

PolarizationState JonesMatrix::apply(const PolarizationState& v) const {
  return {m00 * v[0] + m01 * v[1], m10 * v[0] + m11 * v[1]};
}

JonesMatrix JonesMatrix::adjoint() const {
  return JonesMatrix{std::conj(m00), std::conj(m10), std::conj(m01),
                     std::conj(m11)};
}

Complex JonesMatrix::determinant() const { return m00 * m11 - m01 * m10; }

JonesMatrix JonesMatrix::inverse() const {
  const Complex det = determinant();
  if (std::abs(det) < 1e-300) {
    throw std::invalid_argument("JonesMatrix::inverse: singular matrix");
  }
  return JonesMatrix{m11 / det, -m01 / det, -m10 / det, m00 / det};
}

bool JonesMatrix::is_unitary(double tol) const {
  const JonesMatrix p = adjoint() * (*this);
  return p.max_abs_diff(identity()) <= tol;
}

double JonesMatrix::max_abs_diff(const JonesMatrix& other) const {
  double d = std::abs(m00 - other.m00);
  d = std::max(d, std::abs(m01 - other.m01));
  d = std::max(d, std::abs(m10 - other.m10));
  d = std::max(d, std::abs(m11 - other.m11));
  return d;
}

JonesMatrix JonesMatrix::identity() {
  return JonesMatrix{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
}

JonesMatrix JonesMatrix::rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return JonesMatrix{{c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0}};
}

JonesMatrix JonesMatrix::random_unitary(Rng& rng) {
  // U = e^{i alpha} [[ e^{i psi} cos t,  e^{i chi} sin t],
  //                  [-e^{-i chi} sin t, e^{-i psi} cos t]]
  const double two_pi = 2.0 * std::numbers::pi;
  const double alpha = two_pi * uniform01(rng);
  const double psi = two_pi * uniform01(rng);
  const double chi = two_pi * uniform01(rng);
  const double t = std::asin(std::sqrt(uniform01(rng)));
  const Complex phase = std::polar(1.0, alpha);
  const double c = std::cos(t);
  const double s = std::sin(t);
  return JonesMatrix{phase * std::polar(c, psi), phase * std::polar(s, chi),
                     phase * (-std::polar(s, -chi)),
                     phase * std::polar(c, -psi)};
}

JonesMatrix faraday_mirror() {
  return JonesMatrix{{0.0, 0.0}, {-1.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}};
}

JonesMatrix roundtrip_jones(const JonesMatrix& t) {
  if (!t.is_unitary(1e-10)) {
    throw std::invalid_argument("roundtrip_jones: channel matrix is not unitary");
  }
  return t.inverse() * faraday_mirror() * t;
}

double faraday_form_residual(const JonesMatrix& m) {
  // Nearest e^{i phi} FM has off-diagonals -e^{i phi} and zero diagonals.
  const Complex off = (m.m01 + m.m10) * 0.5;
  const double phi = std::arg(-off);
  JonesMatrix ideal = faraday_mirror();
  const Complex phase = std::polar(1.0, phi);
  ideal.m01 *= phase;
  ideal.m10 *= phase;
  return m.max_abs_diff(ideal);
}

Complex inner_product(const PolarizationState& a, const PolarizationState& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

}  // namespace qkdnet
