#pragma once

// Second-order forward-mode jets: value, gradient and Hessian of a complex
// scalar with respect to up to kMaxDim chart coordinates.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace pslab {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 4;

class Jet {
 public:
  cplx v{};
  std::array<cplx, kMaxDim> d{};
  std::array<std::array<cplx, kMaxDim>, kMaxDim> h{};

  constexpr Jet() = default;
  Jet(double x) : v(x) {}  // NOLINT(google-explicit-constructor)
  Jet(cplx x) : v(x) {}    // NOLINT(google-explicit-constructor)

  // Independent variable number `index`.
  static Jet variable(double x, int index) {
    Jet j(x);
    j.d[static_cast<std::size_t>(index)] = 1.0;
    return j;
  }

  double real() const { return v.real(); }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (int i = 0; i < kMaxDim; ++i) {
      d[i] += o.d[i];
      for (int k = 0; k < kMaxDim; ++k) h[i][k] += o.h[i][k];
    }
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    for (int i = 0; i < kMaxDim; ++i) {
      d[i] -= o.d[i];
      for (int k = 0; k < kMaxDim; ++k) h[i][k] -= o.h[i][k];
    }
    return *this;
  }
  Jet& operator*=(cplx s) {
    v *= s;
    for (int i = 0; i < kMaxDim; ++i) {
      d[i] *= s;
      for (int k = 0; k < kMaxDim; ++k) h[i][k] *= s;
    }
    return *this;
  }
  Jet& operator*=(double s) { return *this *= cplx(s); }
  Jet& operator*=(const Jet& o) {
    Jet r;
    r.v = v * o.v;
    for (int i = 0; i < kMaxDim; ++i) {
      r.d[i] = v * o.d[i] + o.v * d[i];
      for (int k = 0; k < kMaxDim; ++k)
        r.h[i][k] = v * o.h[i][k] + o.v * h[i][k] + d[i] * o.d[k] + o.d[i] * d[k];
    }
    return *this = r;
  }
  Jet& operator/=(const Jet& o);

  Jet operator-() const {
    Jet r = *this;
    r *= -1.0;
    return r;
  }

  // f(a) given f(a.v), f'(a.v), f''(a.v).
  Jet chain(cplx f0, cplx f1, cplx f2) const {
    Jet r;
    r.v = f0;
    for (int i = 0; i < kMaxDim; ++i) {
      r.d[i] = f1 * d[i];
      for (int k = 0; k < kMaxDim; ++k) r.h[i][k] = f1 * h[i][k] + f2 * d[i] * d[k];
    }
    return r;
  }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator*(Jet a, cplx s) { return a *= s; }
inline Jet operator*(cplx s, Jet a) { return a *= s; }
inline Jet operator+(Jet a, double s) { a.v += s; return a; }
inline Jet operator+(double s, Jet a) { a.v += s; return a; }
inline Jet operator-(Jet a, double s) { a.v -= s; return a; }
inline Jet operator-(double s, const Jet& a) { return (-a) + s; }

inline Jet reciprocal(const Jet& a) {
  const cplx inv = 1.0 / a.v;
  return a.chain(inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet& Jet::operator/=(const Jet& o) { return *this *= reciprocal(o); }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
inline Jet operator/(double s, const Jet& a) { return s * reciprocal(a); }

inline Jet sqrt(const Jet& a) {
  const cplx s = std::sqrt(a.v);
  return a.chain(s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet exp(const Jet& a) {
  const cplx e = std::exp(a.v);
  return a.chain(e, e, e);
}
inline Jet log(const Jet& a) {
  return a.chain(std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}
inline Jet sin(const Jet& a) {
  const cplx s = std::sin(a.v), c = std::cos(a.v);
  return a.chain(s, c, -s);
}
inline Jet cos(const Jet& a) {
  const cplx s = std::sin(a.v), c = std::cos(a.v);
  return a.chain(c, -s, -c);
}
inline Jet tan(const Jet& a) {
  const cplx t = std::tan(a.v);
  const cplx sec2 = 1.0 + t * t;
  return a.chain(t, sec2, 2.0 * t * sec2);
}
inline Jet sinh(const Jet& a) {
  const cplx s = std::sinh(a.v), c = std::cosh(a.v);
  return a.chain(s, c, s);
}
inline Jet cosh(const Jet& a) {
  const cplx s = std::sinh(a.v), c = std::cosh(a.v);
  return a.chain(c, s, c);
}
inline Jet tanh(const Jet& a) {
  const cplx t = std::tanh(a.v);
  const cplx sech2 = 1.0 - t * t;
  return a.chain(t, sech2, -2.0 * t * sech2);
}
inline Jet atan(const Jet& a) {
  const cplx q = 1.0 / (1.0 + a.v * a.v);
  return a.chain(std::atan(a.v), q, -2.0 * a.v * q * q);
}
inline Jet atanh(const Jet& a) {
  const cplx q = 1.0 / (1.0 - a.v * a.v);
  return a.chain(std::atanh(a.v), q, 2.0 * a.v * q * q);
}
inline Jet asinh(const Jet& a) {
  const cplx s = std::sqrt(1.0 + a.v * a.v);
  return a.chain(std::asinh(a.v), 1.0 / s, -a.v / (s * s * s));
}
inline Jet acosh(const Jet& a) {
  const cplx s = std::sqrt(a.v - 1.0) * std::sqrt(a.v + 1.0);
  return a.chain(std::acosh(a.v), 1.0 / s, -a.v / (s * s * s));
}
inline Jet pow(const Jet& a, double p) {
  const cplx f = std::pow(a.v, p);
  return a.chain(f, p * f / a.v, p * (p - 1.0) * f / (a.v * a.v));
}
inline Jet square(const Jet& a) { return a * a; }
inline double square(double x) { return x * x; }

// Real-valued atan2 on jets; branches on the larger argument to keep the
// quotient bounded.
inline Jet atan2(const Jet& y, const Jet& x) {
  const double angle = std::atan2(y.v.real(), x.v.real());
  Jet r;
  if (std::abs(x.v.real()) >= std::abs(y.v.real())) {
    r = atan(y / x);
  } else {
    r = -atan(x / y);
  }
  r.v = angle;
  return r;
}

// Coordinates seeded as independent variables.
inline std::vector<Jet> seed(std::span<const double> x) {
  std::vector<Jet> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(Jet::variable(x[i], static_cast<int>(i)));
  return out;
}

// Coordinates as constants (derivative parts zero).
inline std::vector<Jet> constants(std::span<const double> x) {
  return {x.begin(), x.end()};
}

}  // namespace pslab
