#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "sqgd/certify.hpp"
#include "sqgd/diagnostics.hpp"

namespace sqgd::csv {

inline constexpr std::string_view kDiagnosticsHeader =
    "t,l2,linf,max_grad,mean,nonlinear_flux,dispersive_flux,dissipation,b_min";

/// Decimal with 17 significant digits ("%.17g").
std::string format_double(double v);

/// One diagnostics row, no trailing newline; b_min is empty when not computed.
std::string diagnostics_row(const DiagnosticsRecord& r);

std::string certificate_header();
std::string certificate_row(const ModulusCertificate& c, const Grid& grid);

std::string audit_header();
std::string audit_row(const AuditReport& r);

}  // namespace sqgd::csv
