#pragma once

#include <cmath>
#include <complex>

namespace dhm {

struct PlanePoint {
  double re = 0.0;
  double im = 0.0;

  constexpr PlanePoint() = default;
  constexpr PlanePoint(double x, double y) : re(x), im(y) {}
  PlanePoint(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT

  std::complex<double> complex() const { return {re, im}; }
  double norm2() const { return re * re + im * im; }
  double abs() const { return std::hypot(re, im); }
  bool finite() const { return std::isfinite(re) && std::isfinite(im); }

  PlanePoint& operator+=(PlanePoint o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend PlanePoint operator+(PlanePoint a, PlanePoint b) { return {a.re + b.re, a.im + b.im}; }
  friend PlanePoint operator-(PlanePoint a, PlanePoint b) { return {a.re - b.re, a.im - b.im}; }
  friend PlanePoint operator*(double s, PlanePoint p) { return {s * p.re, s * p.im}; }
  friend bool operator==(PlanePoint a, PlanePoint b) = default;
};

}  // namespace dhm
