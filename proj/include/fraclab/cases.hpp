#pragma once

#include <string>
#include <string_view>

#include "fraclab/params.hpp"

namespace fraclab {

enum class CaseKind { Subcritical, CriticalIntegrable, CriticalBorderline, CriticalLog, Supercritical };

struct CaseLabel {
    CaseKind kind = CaseKind::Subcritical;
    FracParams params;
    double p = 2.0;
    double q = 0.0;

    bool singular() const noexcept {
        return kind == CaseKind::CriticalBorderline || kind == CaseKind::CriticalLog || kind == CaseKind::Supercritical;
    }
};

// Total function of (p - p_theta, q). Throws ParameterError for p <= 1.
CaseLabel label_case(const FracParams& params, double p, double q);

std::string_view case_name(CaseKind kind);
CaseKind parse_case(std::string_view name);

}  // namespace fraclab
