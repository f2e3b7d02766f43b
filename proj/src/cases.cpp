#include "fraclab/cases.hpp"

#include <cmath>
#include <string>

namespace fraclab {

CaseLabel label_case(const FracParams& params, double p, double q) {
    if (!(p > 1.0)) throw ParameterError("nonlinearity exponent p must exceed 1");
    if (!std::isfinite(q)) throw ParameterError("log exponent q must be finite");
    CaseLabel c{CaseKind::Subcritical, params, p, q};
    if (is_critical(params, p)) {
        if (q < -1.0 - kCriticalTol)
            c.kind = CaseKind::CriticalIntegrable;
        else if (q <= -1.0 + kCriticalTol)
            c.kind = CaseKind::CriticalBorderline;
        else
            c.kind = CaseKind::CriticalLog;
    } else if (p > params.p_theta) {
        c.kind = CaseKind::Supercritical;
    }
    return c;
}

std::string_view case_name(CaseKind kind) {
    switch (kind) {
        case CaseKind::Subcritical:
            return "Subcritical";
        case CaseKind::CriticalIntegrable:
            return "CriticalIntegrable";
        case CaseKind::CriticalBorderline:
            return "CriticalBorderline";
        case CaseKind::CriticalLog:
            return "CriticalLog";
        case CaseKind::Supercritical:
            return "Supercritical";
    }
    return "?";
}

CaseKind parse_case(std::string_view name) {
    for (auto k : {CaseKind::Subcritical, CaseKind::CriticalIntegrable, CaseKind::CriticalBorderline,
                   CaseKind::CriticalLog, CaseKind::Supercritical})
        if (name == case_name(k)) return k;
    if (name == "borderline") return CaseKind::CriticalBorderline;
    if (name == "critical_log") return CaseKind::CriticalLog;
    if (name == "supercritical") return CaseKind::Supercritical;
    throw ParameterError("unknown case label: " + std::string(name));
}

}  // namespace fraclab
