#include "sqgd/csv.hpp"

#include <cstdio>
#include <initializer_list>

namespace sqgd::csv {

namespace {

std::string join(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const std::string& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  return out;
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(int v) { return std::to_string(v); }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string diagnostics_row(const DiagnosticsRecord& r) {
  return join({fmt(r.t), fmt(r.l2), fmt(r.linf), fmt(r.max_grad), fmt(r.mean),
               fmt(r.nonlinear_flux), fmt(r.dispersive_flux), fmt(r.dissipation),
               r.b_min ? fmt(*r.b_min) : std::string()});
}

std::string certificate_header() {
  return "b_min,y_i,y_j,z_i,z_j,y_x1,y_x2,z_x1,z_x2,xi,slack";
}

std::string certificate_row(const ModulusCertificate& c, const Grid& grid) {
  const Witness& w = c.witness;
  return join({fmt(c.b_min), fmt(w.y.i), fmt(w.y.j), fmt(w.z.i), fmt(w.z.j), fmt(grid.coord(w.y.i)),
               fmt(grid.coord(w.y.j)), fmt(grid.coord(w.z.i)), fmt(grid.coord(w.z.j)), fmt(w.xi),
               fmt(c.slack)});
}

std::string audit_header() {
  return "B,A,y_i,y_j,z_i,z_j,xi,lhs_breakthrough,omega_B_prime,big_omega_B,rhs_almfin,"
         "disp_increment,disp_bound,disp_ratio,flow_increment,flow_bound,flow_ratio,pair_rate";
}

std::string audit_row(const AuditReport& r) {
  const Witness& w = r.witness;
  return join({fmt(r.B), fmt(r.A), fmt(w.y.i), fmt(w.y.j), fmt(w.z.i), fmt(w.z.j), fmt(r.xi),
               fmt(r.lhs_breakthrough), fmt(r.omega_B_prime), fmt(r.big_omega_B),
               fmt(r.rhs_almfin), fmt(r.disp_increment), fmt(r.disp_bound), fmt(r.disp_ratio),
               fmt(r.flow_increment), fmt(r.flow_bound), fmt(r.flow_ratio), fmt(r.pair_rate)});
}

}  // namespace sqgd::csv
