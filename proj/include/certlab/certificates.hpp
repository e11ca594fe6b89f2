#pragma once

#include <string>
#include <string_view>

#include "certlab/common.hpp"

namespace certlab {

// Width family for the high-probability lower bound. With m = floor(s2/k)
// samples per retained arm the width is sqrt(scale/m * log(log_numerator/delta)).
struct BoundKind {
    enum class Family { hoeffding_bounded, sub_gaussian };

    Family family = Family::hoeffding_bounded;
    double log_numerator = 2.0;  // numerator inside log(./delta)
    double scale = 0.5;          // multiplier on 1/m inside the sqrt
    bool bonferroni = false;     // divide delta by k for simultaneous validity

    // sqrt(k/(2 s2) log(2/delta))
    static BoundKind eq3_hoeffding() { return {Family::hoeffding_bounded, 2.0, 0.5, false}; }
    // c(i) = sqrt(2 log(1/delta) i / s2)
    static BoundKind prop1_c() { return {Family::hoeffding_bounded, 1.0, 2.0, false}; }
    // sqrt(log(1/delta) i / (2 s2))
    static BoundKind omniscient_c() { return {Family::hoeffding_bounded, 1.0, 0.5, false}; }
    // sqrt(2k/s2 log(2/delta))
    static BoundKind subgaussian() { return {Family::sub_gaussian, 2.0, 2.0, false}; }

    // "eq3" | "prop1" | "omniscient" | "subgaussian"
    static BoundKind from_name(std::string_view name);
    std::string name() const;
};

// Final certificate for one trial.
struct CertificateResult {
    int arm = 0;                  // selected arm index
    double l = 0.0;               // the certificate value
    int k = 1;                    // retained-set size
    long long per_arm_samples = 0;  // m = floor(s2/k)
    double delta = 0.0;
};

// Lower-bound half width at k retained arms and second-stage budget s2.
// Requires k >= 1, s2 >= k (else infeasible_design), 0 < delta < 1.
double half_width(int k, long long s2, double delta, const BoundKind& bound);

// emp_mean - half_width(k, s2, delta, bound); may be negative.
double certificate_value(double emp_mean, int k, long long s2, double delta,
                         const BoundKind& bound);

}  // namespace certlab
