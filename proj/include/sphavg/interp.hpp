#ifndef SPHAVG_INTERP_HPP_
#define SPHAVG_INTERP_HPP_

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphavg/rational.hpp"
#include "sphavg/regions.hpp"

namespace sphavg {

// ||T_j||_{L^{p^1} x ... x L^{p^n} -> L^q} <= M 2^{rate j}; rate > 0 is growth, rate < 0 decay.
struct EndpointEstimate {
  std::vector<Exponent> inputs;
  Exponent output;
  Rational rate;
  std::string norm_label = "M";

  std::size_t arity() const { return inputs.size(); }
};

struct InterpolatedPoint {
  Rational theta;
  std::vector<Rational> input_reciprocals;
  Rational output_reciprocal;
  Rational growth_norm_power;  // θ, the power of M_1
  Rational decay_norm_power;   // 1 - θ, the power of M_2
  bool from_infinite_q1 = false;  // growth endpoint has q1 = inf: needs the two-step argument
};

struct InterpolationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline InterpolatedPoint bourgain_combine(const EndpointEstimate& growth, const EndpointEstimate& decay) {
  if (growth.arity() != decay.arity() || growth.arity() == 0) throw InterpolationError("arity mismatch");
  if (growth.rate == 0 || decay.rate == 0) throw InterpolationError("degenerate rate: epsilon = 0");
  if (growth.rate < 0 && decay.rate < 0) throw InterpolationError("both estimates decay");
  if (growth.rate > 0 && decay.rate > 0) throw InterpolationError("both estimates grow");
  if (growth.rate < 0) throw InterpolationError("first estimate must be the growing one");
  const Rational e1 = growth.rate;
  const Rational e2 = -decay.rate;
  InterpolatedPoint out;
  out.theta = e2 / (e1 + e2);
  const Rational& th = out.theta;
  for (std::size_t i = 0; i < growth.arity(); ++i) {
    out.input_reciprocals.push_back(th * growth.inputs[i].reciprocal() + (1 - th) * decay.inputs[i].reciprocal());
  }
  out.output_reciprocal = th * growth.output.reciprocal() + (1 - th) * decay.output.reciprocal();
  out.growth_norm_power = th;
  out.decay_norm_power = 1 - th;
  out.from_infinite_q1 = growth.output.is_infinite();
  return out;
}

struct TableRow {
  int id = 0;
  int d_min = 2;
  bool d_two_only = false;
  Rational inv_r_lo;  // r range [r_lo, r_hi] expressed through 1/r
  Rational inv_r_hi;
  std::string vertex;

  bool applies(int d, const Exponent& r) const {
    if (d < d_min || (d_two_only && d != 2)) return false;
    return r.reciprocal() >= inv_r_lo && r.reciprocal() <= inv_r_hi;
  }

  std::pair<EndpointEstimate, EndpointEstimate> endpoints(int d, const Exponent& r) const {
    const Rational D = d;
    const Rational ir = r.reciprocal();
    const Rational irc = 1 - ir;
    auto one = [](const Rational& inv_in, const Rational& inv_out, const Rational& rate) {
      return EndpointEstimate{{Exponent::from_reciprocal(inv_in)}, Exponent::from_reciprocal(inv_out), rate, "M"};
    };
    const Rational q1 = id <= 4 ? Rational(0) : Rational(1);
    EndpointEstimate growth = one(1, q1, irc);
    growth.norm_label = "M1";
    EndpointEstimate decay;
    switch (id) {
      case 1: decay = one((12 * ir + 7) / 19, 4 * irc / 19, -irc / 19); break;
      case 2: decay = one((1 + ir) / 2, (D - 1) * irc / (2 * (D + 1)), -(D * D - 2 * D - 1) * irc / (2 * (D + 1))); break;
      case 3: decay = one(ir, irc, -(D - 1) * irc); break;
      case 4: decay = one(rat(1, 2), rat(1, 2), -((D - 2) / 2 + ir)); break;
      case 5: decay = one(ir, ir, -(D - 1) * irc); break;
      case 6: decay = one(rat(1, 2), rat(1, 2), -((D - 2) / 2 + ir)); break;
      default: throw std::out_of_range("table row id");
    }
    decay.norm_label = "M2";
    return {growth, decay};
  }
};

inline const std::vector<TableRow>& interpolation_table() {
  static const std::vector<TableRow> rows{
      {1, 2, true, 0, 1, "P"},          {2, 3, false, 0, 1, "P"},
      {3, 2, false, rat(1, 2), 1, "Q"}, {4, 2, false, 0, rat(1, 2), "Q"},
      {5, 2, false, rat(1, 2), 1, "R"}, {6, 2, false, 0, rat(1, 2), "R"}};
  return rows;
}

struct TableCheck {
  int row = 0;
  int d = 2;
  Exponent r;
  std::string vertex;
  std::string status;  // matched | degenerate | mismatch
  std::string note;
  std::optional<InterpolatedPoint> point;
};

struct TableReport {
  std::vector<TableCheck> checks;
  bool all_matched() const {
    for (const auto& c : checks) {
      if (c.status == "mismatch") return false;
    }
    return true;
  }
  std::size_t rows_exact() const {
    std::vector<bool> seen(7, false), bad(7, false);
    for (const auto& c : checks) {
      seen[c.row] = seen[c.row] || c.status == "matched";
      bad[c.row] = bad[c.row] || c.status == "mismatch";
    }
    std::size_t n = 0;
    for (int i = 1; i <= 6; ++i) n += seen[i] && !bad[i];
    return n;
  }
};

inline std::vector<Exponent> default_table_r_samples() {
  return {Exponent::from_value(1), Exponent::from_value(rat(5, 4)), Exponent::from_value(rat(3, 2)),
          Exponent::from_value(2), Exponent::from_value(3), Exponent::infinity()};
}

inline TableReport reproduce_table(const std::vector<int>& dims = {2, 3, 4},
                                   const std::vector<Exponent>& rs = default_table_r_samples()) {
  TableReport rep;
  for (const auto& row : interpolation_table()) {
    for (int d : dims) {
      for (const auto& r : rs) {
        if (!row.applies(d, r)) continue;
        TableCheck c{row.id, d, r, row.vertex, "matched", "", std::nullopt};
        const auto [growth, decay] = row.endpoints(d, r);
        if (growth.rate == 0 || decay.rate == 0) {
          c.status = "degenerate";
          c.note = growth.rate == 0 ? "epsilon1 = 1/r' = 0" : "epsilon2 = 0";
          rep.checks.push_back(c);
          continue;
        }
        c.point = bourgain_combine(growth, decay);
        const auto target = detail::get(vertex_table("linearAr", d, r), row.vertex);
        if (c.point->input_reciprocals[0] != target[0] || c.point->output_reciprocal != target[1]) {
          c.status = "mismatch";
          c.note = "row " + std::to_string(row.id) + " lands on (" + to_string(c.point->input_reciprocals[0]) + ", " +
                   to_string(c.point->output_reciprocal) + ")";
        }
        rep.checks.push_back(c);
      }
    }
  }
  return rep;
}

inline void write_table_csv(std::ostream& out, const TableReport& rep) {
  out << "row,d,r,theta,inv_p,inv_q,vertex,status\n";
  for (const auto& c : rep.checks) {
    out << c.row << ',' << c.d << ',' << c.r.str() << ',';
    if (c.point) {
      out << to_string(c.point->theta) << ',' << to_string(c.point->input_reciprocals[0]) << ','
          << to_string(c.point->output_reciprocal);
    } else {
      out << ",,";
    }
    out << ',' << c.vertex << ',' << c.status << '\n';
  }
}

}  // namespace sphavg

#endif  // SPHAVG_INTERP_HPP_
