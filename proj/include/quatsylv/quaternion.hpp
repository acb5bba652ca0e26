#pragma once

#include <cmath>
#include <ostream>

#include "quatsylv/errors.hpp"

namespace quatsylv {

// Hamilton quaternion w + x*i + y*j + z*k over double.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion real(double v) { return {v, 0.0, 0.0, 0.0}; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }

  constexpr Quaternion& operator*=(double s) {
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) {
  a += b;
  return a;
}

constexpr Quaternion operator-(Quaternion a, const Quaternion& b) {
  a -= b;
  return a;
}

constexpr Quaternion operator*(Quaternion a, double s) {
  a *= s;
  return a;
}

constexpr Quaternion operator*(double s, Quaternion a) {
  a *= s;
  return a;
}

// Hamilton product; i*j = k, j*k = i, k*i = j.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return a * b;
}

constexpr Quaternion qconj(const Quaternion& q) {
  return {q.w, -q.x, -q.y, -q.z};
}

constexpr double norm_sq(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

inline double norm(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

inline Quaternion qinv(const Quaternion& q) {
  const double n2 = norm_sq(q);
  if (n2 == 0.0) throw ZeroDivision("qinv: zero quaternion");
  return qconj(q) * (1.0 / n2);
}

inline bool is_finite(const Quaternion& q) {
  return std::isfinite(q.w) && std::isfinite(q.x) && std::isfinite(q.y) &&
         std::isfinite(q.z);
}

enum class EtaAxis { I, J, K };

constexpr Quaternion eta_unit(EtaAxis eta) {
  switch (eta) {
    case EtaAxis::I:
      return {0.0, 1.0, 0.0, 0.0};
    case EtaAxis::J:
      return {0.0, 0.0, 1.0, 0.0};
    default:
      return {0.0, 0.0, 0.0, 1.0};
  }
}

constexpr char eta_name(EtaAxis eta) {
  switch (eta) {
    case EtaAxis::I:
      return 'i';
    case EtaAxis::J:
      return 'j';
    default:
      return 'k';
  }
}

// -eta * qconj(q) * eta: negates the eta imaginary component, keeps the rest.
constexpr Quaternion eta_conj(const Quaternion& q, EtaAxis eta) {
  switch (eta) {
    case EtaAxis::I:
      return {q.w, -q.x, q.y, q.z};
    case EtaAxis::J:
      return {q.w, q.x, -q.y, q.z};
    default:
      return {q.w, q.x, q.y, -q.z};
  }
}

// -eta * q * eta: keeps the eta imaginary component, negates the other two.
constexpr Quaternion eta_similar(const Quaternion& q, EtaAxis eta) {
  switch (eta) {
    case EtaAxis::I:
      return {q.w, q.x, -q.y, -q.z};
    case EtaAxis::J:
      return {q.w, -q.x, q.y, -q.z};
    default:
      return {q.w, -q.x, -q.y, q.z};
  }
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  os << q.w;
  const char axes[3] = {'i', 'j', 'k'};
  const double comps[3] = {q.x, q.y, q.z};
  for (int t = 0; t < 3; ++t) {
    os << (comps[t] < 0 ? '-' : '+') << std::abs(comps[t]) << axes[t];
  }
  return os;
}

}  // namespace quatsylv
