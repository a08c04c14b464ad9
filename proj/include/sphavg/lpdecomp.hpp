#ifndef SPHAVG_LPDECOMP_HPP_
#define SPHAVG_LPDECOMP_HPP_

#include <fftw3.h>
#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphavg/funcspace.hpp"
#include "sphavg/operators.hpp"
#include "sphavg/quad.hpp"

// Fourier convention: f^(ξ) = ∫ f(x) e^{-i x·ξ} dx (angular frequency), so ψ^_{2^{-j}} lives on 2^{j-1} <= |ξ| <= 2^{j+1}.

namespace sphavg {

struct AliasingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class MultiplierBank {
 public:
  explicit MultiplierBank(int pieces = 10) : pieces_(pieces) {
    if (pieces < 1) throw std::invalid_argument("MultiplierBank: need at least one piece");
    const GaussRule g = gauss_legendre(64, -1.0, 1.0);
    total_ = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) total_ += g.weights[i] * bump(g.nodes[i]);
  }

  int pieces() const { return pieces_; }

  // exp(-1/(1-s^2)) on (-1,1).
  static double bump(double s) { return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

  // Radial φ^: 1 on [0,1], 0 beyond 2, monotone smooth transition from the normalised bump integral.
  double phi_hat(double rho) const {
    if (rho <= 1.0) return 1.0;
    if (rho >= 2.0) return 0.0;
    const double upper = 2.0 * (rho - 1.0) - 1.0;
    const GaussRule g = gauss_legendre(48, -1.0, upper);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * bump(g.nodes[i]);
    return std::clamp(1.0 - acc / total_, 0.0, 1.0);
  }

  double psi_hat(int j, double rho) const {
    return phi_hat(std::ldexp(rho, -j)) - phi_hat(std::ldexp(rho, -j + 1));
  }

  // Multiplier of piece j; j = 0 is the low-frequency φ piece.
  double piece_hat(int j, double rho) const { return j == 0 ? phi_hat(rho) : psi_hat(j, rho); }

 private:
  int pieces_;
  double total_ = 1.0;
};

struct PartitionReport {
  double max_error = 0.0;
  bool in_range = true;  // annulus inside [1/2, 2^{J-1}]
};

// max over sampled radii in [lo, hi] of |φ^ + Σ_{j<=J} ψ^_{2^{-j}} - 1|.
inline PartitionReport partition_check(const MultiplierBank& bank, double lo, double hi, std::size_t samples = 2048) {
  PartitionReport rep;
  rep.in_range = lo >= 0.5 && hi <= std::ldexp(1.0, bank.pieces() - 1);
  for (std::size_t i = 0; i <= samples; ++i) {
    const double rho = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples);
    double s = bank.phi_hat(rho);
    for (int j = 1; j <= bank.pieces(); ++j) s += bank.psi_hat(j, rho);
    rep.max_error = std::max(rep.max_error, std::abs(s - 1.0));
  }
  return rep;
}

namespace detail {

// Angular frequency of FFT bin k on an n-point axis of spacing h.
inline double fft_frequency(std::size_t k, std::size_t n, double h) {
  const long kk = k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
  return 2.0 * std::numbers::pi * static_cast<double>(kk) / (static_cast<double>(n) * h);
}

}  // namespace detail

// Applies a radial Fourier multiplier m(|ξ|) to a 2-D grid function (periodic DFT on the box).
template <class M>
GridFunction apply_radial_multiplier(const GridFunction& f, M&& multiplier) {
  if (f.dim() != 2) throw std::invalid_argument("apply_radial_multiplier: d = 2 only");
  const std::size_t n0 = f.shape()[0], n1 = f.shape()[1];
  const std::size_t nc = n1 / 2 + 1;
  std::vector<double> in(f.values());
  std::vector<std::complex<double>> spec(n0 * nc);
  fftw_plan fwd = fftw_plan_dft_r2c_2d(static_cast<int>(n0), static_cast<int>(n1), in.data(),
                                       reinterpret_cast<fftw_complex*>(spec.data()), FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  const double h0 = f.spacing()[0], h1 = f.spacing()[1];
  for (std::size_t a = 0; a < n0; ++a) {
    const double k0 = detail::fft_frequency(a, n0, h0);
    for (std::size_t b = 0; b < nc; ++b) {
      const double k1 = detail::fft_frequency(b, n1, h1);
      spec[a * nc + b] *= multiplier(std::hypot(k0, k1));
    }
  }
  GridFunction out = f;
  fftw_plan bwd = fftw_plan_dft_c2r_2d(static_cast<int>(n0), static_cast<int>(n1),
                                       reinterpret_cast<fftw_complex*>(spec.data()), out.values().data(),
                                       FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);
  const double scale = 1.0 / static_cast<double>(n0 * n1);
  for (double& v : out.values()) v *= scale;
  out.invalidate_cache();
  return out;
}

// Largest angular frequency resolved by the grid.
inline double nyquist(const GridFunction& f) {
  double m = HUGE_VAL;
  for (int a = 0; a < f.dim(); ++a) m = std::min(m, std::numbers::pi / f.spacing()[a]);
  return m;
}

// f * ψ_{2^{-j}} (j >= 1) or f * φ (j = 0) on a 2-D grid.
inline GridFunction lp_piece(const GridFunction& f, int j, const MultiplierBank& bank) {
  if (j < 0) throw std::invalid_argument("lp_piece: j must be nonnegative");
  if (std::ldexp(1.0, j + 1) > nyquist(f)) {
    throw AliasingError("lp_piece: grid does not resolve frequency 2^(j+1) for j = " + std::to_string(j));
  }
  return apply_radial_multiplier(f, [&](double rho) { return bank.piece_hat(j, rho); });
}

// A^{r,j}_1 f(x) = 𝔄^r (f * ψ_{2^{-j}})(x) for a 2-D grid function.
inline double a_rj(const GridFunction& f, const Pt<2>& x, int j, const RExponent& r, const MultiplierBank& bank,
                   const SphereRule& rule, std::size_t panels) {
  GridFunction piece = lp_piece(f, j, bank);
  piece.periodic = f.periodic;
  piece.edge_tolerance = f.edge_tolerance;
  return ar_value<2>(piece, x, r, rule, panels);
}

// Periodic grid on [-half, half]^2 holding a random real field with spectrum in the band of piece j.
template <class Rng>
GridFunction band_limited_noise(int j, const MultiplierBank& bank, std::size_t n, double half, Rng& rng) {
  GridFunction g(2, {-half, -half, 0.0}, {2.0 * half / n, 2.0 * half / n, 1.0}, {n, n, 1});
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : g.values()) v = normal(rng);
  GridFunction piece = lp_piece(g, j, bank);
  piece.periodic = true;
  const double norm = lp_norm(piece, Exponent::from_value(2));
  for (double& v : piece.values()) v /= norm;
  return piece;
}

// Radial Fourier integral (1/2π) ∫ F(ρ) J0(rρ) ρ dρ over the band of piece j, with F supplied by the caller.
class RadialBandIntegrator {
 public:
  RadialBandIntegrator(const MultiplierBank& bank, int j, double max_radius, std::size_t order = 8) {
    const double lo = j == 0 ? 0.0 : std::ldexp(1.0, j - 1);
    const double hi = std::ldexp(1.0, j + 1);
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) * max_radius / std::numbers::pi)) + 8;
    const GaussRule g = composite_gauss(lo, hi, panels, order);
    rho_ = g.nodes;
    weight_.resize(rho_.size());
    for (std::size_t i = 0; i < rho_.size(); ++i) {
      weight_[i] = g.weights[i] * bank.piece_hat(j, rho_[i]) * rho_[i] / (2.0 * std::numbers::pi);
    }
  }

  const std::vector<double>& rho() const { return rho_; }
  const std::vector<double>& weight() const { return weight_; }

 private:
  std::vector<double> rho_;
  std::vector<double> weight_;
};

// ψ_{2^{-j}} * dσ_t at radius |x|, normalized σ: (1/2π) ∫ ψ^(2^{-j}ρ) J0(tρ) J0(|x|ρ) ρ dρ.
inline double kernel_value(const RadialBandIntegrator& band, double t, double radius) {
  double acc = 0.0;
  for (std::size_t i = 0; i < band.rho().size(); ++i) {
    const double rho = band.rho()[i];
    acc += band.weight()[i] * gsl_sf_bessel_J0(t * rho) * gsl_sf_bessel_J0(radius * rho);
  }
  return acc;
}

struct DecayCheckSpec {
  int j = 3;
  double t = 1.5;
  int order_n = 4;
  std::vector<double> offsets;  // values of |x| - t in units of 2^{-j}

  static DecayCheckSpec standard(int j, int order_n) {
    DecayCheckSpec s;
    s.j = j;
    s.order_n = order_n;
    for (int i = -24; i <= 24; ++i) s.offsets.push_back(0.5 * i);
    return s;
  }
};

struct DecayFit {
  double constant = 0.0;  // smallest C with |K| <= C 2^j / (1 + 2^j ||x| - t|)^N on the samples
  double peak = 0.0;      // |K| at |x| = t
  std::vector<double> radii;
  std::vector<double> values;
};

inline DecayFit kernel_decay_fit(const DecayCheckSpec& spec, const MultiplierBank& bank) {
  if (spec.order_n < 2) throw std::invalid_argument("kernel_decay_fit: N must be at least 2");
  const double scale = std::ldexp(1.0, spec.j);
  double max_radius = spec.t;
  for (double o : spec.offsets) max_radius = std::max(max_radius, spec.t + o / scale);
  const RadialBandIntegrator band(bank, spec.j, spec.t + max_radius);
  DecayFit fit;
  for (double o : spec.offsets) {
    const double radius = spec.t + o / scale;
    if (radius <= 0.0) continue;
    const double k = kernel_value(band, spec.t, radius);
    fit.radii.push_back(radius);
    fit.values.push_back(k);
    const double bound_shape = scale / std::pow(1.0 + std::abs(o), spec.order_n);
    fit.constant = std::max(fit.constant, std::abs(k) / bound_shape);
    if (o == 0.0) fit.peak = std::abs(k);
  }
  return fit;
}

// ||A^{2,j}_1||_{L^2 -> L^2(L^2([1,2], t dt))}: by Plancherel the sup over plane waves |ξ| = ρ of
// |ψ^(2^{-j}ρ)| (∫_1^2 J0(tρ)² t dt)^{1/2}, using ∫ t J0(ρt)² dt = t²(J0² + J1²)/2.
inline double a2j_l2_norm(const MultiplierBank& bank, int j, std::size_t rho_samples = 1024) {
  if (j < 1) throw std::invalid_argument("a2j_l2_norm: j >= 1");
  const double lo = std::ldexp(1.0, j - 1), hi = std::ldexp(1.0, j + 1);
  auto prim = [](double t, double rho) {
    const double a = gsl_sf_bessel_J0(t * rho), b = gsl_sf_bessel_J1(t * rho);
    return 0.5 * t * t * (a * a + b * b);
  };
  double best = 0.0;
  for (std::size_t i = 0; i <= rho_samples; ++i) {
    const double rho = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(rho_samples);
    const double m = std::abs(bank.psi_hat(j, rho));
    if (m == 0.0) continue;
    best = std::max(best, m * std::sqrt(prim(2.0, rho) - prim(1.0, rho)));
  }
  return best;
}

// A^{r,j}_1 of the indicator of B(0, a), divided by its L^1 norm, at radius |x|: exact radial formula
// (1/2π) ∫ χ^_a(ρ) ψ^(2^{-j}ρ) J0(tρ) J0(|x|ρ) ρ dρ / (πa²) sampled at Gauss nodes in t.
inline double a_rj_point_mass(const MultiplierBank& bank, int j, double radius, const RExponent& r, double a,
                              std::size_t panels) {
  const RadialBandIntegrator band(bank, j, 2.0 + radius);
  std::vector<double> fixed(band.rho().size());
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    const double rho = band.rho()[i];
    const double disc_hat = 2.0 * std::numbers::pi * a * gsl_sf_bessel_J1(a * rho) / rho;
    fixed[i] = band.weight()[i] * disc_hat / (std::numbers::pi * a * a) * gsl_sf_bessel_J0(radius * rho);
  }
  const GaussRule g = composite_gauss(1.0, 2.0, panels, 4);
  double acc = 0.0, best = 0.0;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const double t = g.nodes[k];
    double v = 0.0;
    for (std::size_t i = 0; i < fixed.size(); ++i) v += fixed[i] * gsl_sf_bessel_J0(t * band.rho()[i]);
    v = std::abs(v);
    if (r.is_infinite()) {
      best = std::max(best, v);
    } else {
      acc += g.weights[k] * t * std::pow(v, r.value_double());
    }
  }
  return r.is_infinite() ? best : std::pow(acc, 1.0 / r.value_double());
}

}  // namespace sphavg

#endif  // SPHAVG_LPDECOMP_HPP_
