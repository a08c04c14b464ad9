#ifndef SPHAVG_QUAD_HPP_
#define SPHAVG_QUAD_HPP_

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sphavg {

template <std::size_t D>
using Pt = std::array<double, D>;

enum class MeasureMode { raw, normalized };

// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2).
inline double sphere_area(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points on [a, b].
inline GaussRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(n);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, i, &rule.nodes[i], &rule.weights[i], table);
  }
  gsl_integration_glfixed_table_free(table);
  return rule;
}

// Composite Gauss-Legendre: `panels` equal panels with `order` points each.
inline GaussRule composite_gauss(double a, double b, std::size_t panels, std::size_t order) {
  GaussRule base = gauss_legendre(order, 0.0, 1.0);
  GaussRule rule;
  rule.nodes.reserve(panels * order);
  rule.weights.reserve(panels * order);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = a + h * static_cast<double>(p);
    for (std::size_t i = 0; i < order; ++i) {
      rule.nodes.push_back(left + h * base.nodes[i]);
      rule.weights.push_back(h * base.weights[i]);
    }
  }
  return rule;
}

struct SphereRule {
  int dim = 2;  // ambient dimension d; the rule lives on S^{d-1}
  std::vector<double> nodes;  // flattened, dim entries per node
  std::vector<double> weights;
  MeasureMode mode = MeasureMode::normalized;
  int exactness = 0;  // total polynomial degree integrated exactly

  std::size_t size() const { return weights.size(); }
  const double* node(std::size_t i) const { return nodes.data() + i * static_cast<std::size_t>(dim); }
  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

namespace detail {

inline void scale_to_mode(SphereRule& rule) {
  if (rule.mode == MeasureMode::raw) return;
  const double area = sphere_area(rule.dim);
  for (double& w : rule.weights) w /= area;
}

}  // namespace detail

// Quadrature on S^{d-1}: equispaced on S^1, Gauss-Legendre x trapezoid on S^2 and S^3.
inline SphereRule sphere_rule(int d, int n, MeasureMode mode) {
  if (d < 1 || d > 4) throw std::invalid_argument("sphere_rule: dimension must be in {1,2,3,4}");
  if (n < 4) throw std::invalid_argument("sphere_rule: resolution must be at least 4");
  SphereRule rule;
  rule.dim = d;
  rule.mode = mode;
  const double two_pi = 2.0 * std::numbers::pi;
  if (d == 1) {
    rule.nodes = {1.0, -1.0};
    rule.weights = {1.0, 1.0};
    rule.exactness = 1;
  } else if (d == 2) {
    rule.nodes.reserve(2 * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double a = two_pi * k / n;
      rule.nodes.push_back(std::cos(a));
      rule.nodes.push_back(std::sin(a));
      rule.weights.push_back(two_pi / n);
    }
    rule.exactness = n - 1;
  } else if (d == 3) {
    const int nz = std::max(2, n / 2);
    GaussRule gz = gauss_legendre(static_cast<std::size_t>(nz), -1.0, 1.0);
    for (int i = 0; i < nz; ++i) {
      const double z = gz.nodes[i];
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int k = 0; k < n; ++k) {
        const double a = two_pi * k / n;
        rule.nodes.insert(rule.nodes.end(), {rho * std::cos(a), rho * std::sin(a), z});
        rule.weights.push_back(gz.weights[i] * two_pi / n);
      }
    }
    rule.exactness = std::min(2 * nz - 1, n - 1);
  } else {
    // y4 = cos(psi), (y1,y2,y3) = sin(psi) * (point of S^2); measure sin^2(psi) dpsi dS^2.
    // Gauss-Chebyshev (second kind) in psi absorbs the sin^2 weight exactly.
    const int npsi = std::max(2, n / 2);
    const int nz = std::max(2, n / 2);
    GaussRule gz = gauss_legendre(static_cast<std::size_t>(nz), -1.0, 1.0);
    for (int j = 1; j <= npsi; ++j) {
      const double psi = std::numbers::pi * j / (npsi + 1);
      const double sp = std::sin(psi);
      const double cp = std::cos(psi);
      const double wpsi = std::numbers::pi / (npsi + 1) * sp * sp;
      for (int i = 0; i < nz; ++i) {
        const double z = gz.nodes[i];
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int k = 0; k < n; ++k) {
          const double a = two_pi * k / n;
          rule.nodes.insert(rule.nodes.end(),
                            {sp * rho * std::cos(a), sp * rho * std::sin(a), sp * z, cp});
          rule.weights.push_back(wpsi * gz.weights[i] * two_pi / n);
        }
      }
    }
    rule.exactness = std::min({2 * nz - 1, n - 1, 2 * npsi - 1});
  }
  detail::scale_to_mode(rule);
  return rule;
}

// Counter-clockwise rotation by `angle`.
inline Pt<2> rotate(const Pt<2>& x, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * x[0] - s * x[1], s * x[0] + c * x[1]};
}

// s^{d-1} (1-s^2)^{(d-2)/2}
inline double slicing_weight(double s, int d) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("slicing_weight: s must lie in (0,1)");
  if (d < 2) throw std::domain_error("slicing_weight: d must be at least 2");
  return std::pow(s, d - 1) * std::pow(1.0 - s * s, 0.5 * (d - 2));
}

struct SliceNode {
  double s;       // first radius
  double c;       // complementary radius sqrt(1 - s^2)
  double weight;  // quadrature weight times slicing_weight(s, d)
};

// Nodes for int_0^1 F(s) slicing_weight(s,d) ds after s = sin(phi).
inline std::vector<SliceNode> slicing_nodes(int d, std::size_t n) {
  GaussRule g = gauss_legendre(n, 0.0, 0.5 * std::numbers::pi);
  std::vector<SliceNode> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sin(g.nodes[i]);
    const double c = std::cos(g.nodes[i]);
    out.push_back({s, c, g.weights[i] * std::pow(s, d - 1) * std::pow(c, d - 1)});
  }
  return out;
}

// |S^{d-1}|^2 * int_0^1 slicing_weight(s,d) ds, which must equal |S^{2d-1}|.
inline double slicing_mass(int d, std::size_t n = 64) {
  double integral = 0.0;
  for (const auto& node : slicing_nodes(d, n)) integral += node.weight;
  const double a = sphere_area(d);
  return a * a * integral;
}

}  // namespace sphavg

#endif  // SPHAVG_QUAD_HPP_
