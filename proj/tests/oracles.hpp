#pragma once

// Reference values computed without the library: composite Simpson rules and
// closed forms only.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 20000) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return sum * h / 3.0;
}

// sigma of g~ = q (2 pi)^{-3/2} e^{-p^2 s^2/2} against h~ = c e^{-p^2 t^2/2}
// with the second vector shifted by distance d, as a 1-D radial integral:
// 4 pi (2 pi)^{-3/2} q c \int_0^inf e^{-p^2 (s^2+t^2)/2} sinc(p d) dp.
inline double gaussian_pair_sigma(double q, double s, double c, double t, double d = 0.0) {
  const double width2 = s * s + t * t;
  const double cutoff = 40.0 / std::sqrt(width2);
  const auto f = [&](double p) {
    const double x = p * d;
    const double j0 = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return std::exp(-0.5 * p * p * width2) * j0;
  };
  return 4.0 * pi * std::pow(2.0 * pi, -1.5) * q * c * simpson(f, 0.0, cutoff, 200000);
}

// Same quantity from the erf antiderivative.
inline double gaussian_pair_sigma_closed(double q, double s, double c, double t, double d = 0.0) {
  const double width = std::sqrt(s * s + t * t);
  if (d == 0.0) return q * c / width;
  return q * c * std::sqrt(pi / 2.0) * std::erf(d / (std::sqrt(2.0) * width)) / d;
}

// Fourier transform of the indicator of the unit ball.
inline double indicator_fourier(double p) {
  if (p < 1e-3) return std::pow(2.0 * pi, -1.5) * 4.0 * pi * (1.0 / 3.0 - p * p / 30.0);
  return std::pow(2.0 * pi, -1.5) * 4.0 * pi * (std::sin(p) - p * std::cos(p)) / (p * p * p);
}

// \int d^3p w^{-1} |c|^2 e^{-p^2 t^2} = 2 pi c^2 / t^2.
inline double gaussian_h_norm(double c, double t) { return 2.0 * pi * c * c / (t * t); }

inline double phase_distance(double angle) { return std::abs(std::polar(1.0, angle) - 1.0); }

// splitmix64: small deterministic generator for property sweeps.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double a = 0.0, double b = 1.0) { return a + (b - a) * (next() >> 11) * 0x1.0p-53; }
  int pick(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
};

}  // namespace oracle
