#include "certlab/certificates.hpp"

#include <cmath>

namespace certlab {

BoundKind BoundKind::from_name(std::string_view name) {
    if (name == "eq3") return eq3_hoeffding();
    if (name == "prop1") return prop1_c();
    if (name == "omniscient") return omniscient_c();
    if (name == "subgaussian") return subgaussian();
    throw config_error("unknown bound kind: " + std::string(name));
}

std::string BoundKind::name() const {
    if (family == Family::sub_gaussian) return "subgaussian";
    if (scale == 2.0) return "prop1";
    return log_numerator == 2.0 ? "eq3" : "omniscient";
}

double half_width(int k, long long s2, double delta, const BoundKind& bound) {
    if (k < 1) throw std::domain_error("k must be at least 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must be in (0,1)");
    if (s2 < k) throw infeasible_design("second-stage budget smaller than retained-set size");
    long long m = s2 / k;  // integer per-arm allocation
    double d = bound.bonferroni ? delta / static_cast<double>(k) : delta;
    return std::sqrt(bound.scale / static_cast<double>(m) * std::log(bound.log_numerator / d));
}

double certificate_value(double emp_mean, int k, long long s2, double delta,
                         const BoundKind& bound) {
    return emp_mean - half_width(k, s2, delta, bound);
}

}  // namespace certlab
