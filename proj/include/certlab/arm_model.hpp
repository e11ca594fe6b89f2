#pragma once

#include <optional>
#include <string>
#include <vector>

#include "certlab/common.hpp"

namespace certlab {

// Gaussian perturbation applied to the true means after the prior draw.
// Policies that use the prior keep believing the unperturbed one.
struct MisspecNoise {
    double mean = 0.0;
    double variance = 0.0;  // >= 0
};

enum class PriorKind { uniform01, beta, discrete, point };

struct PriorSpec {
    PriorKind kind = PriorKind::uniform01;
    double alpha = 1.0;                // beta kind
    double beta = 1.0;                 // beta kind
    std::vector<double> values;        // discrete kind, uniform weights
    MeanVector point_means;            // point kind
    std::optional<MisspecNoise> misspec;

    // Throws config_error on invalid parameters.
    void validate() const;

    PriorSpec without_misspec() const {
        PriorSpec p = *this;
        p.misspec.reset();
        return p;
    }
};

enum class OutcomeKind { bernoulli, gaussian };

struct OutcomeModel {
    OutcomeKind kind = OutcomeKind::bernoulli;
    double sd = 1.0;  // gaussian only, > 0

    void validate() const;
};

// One i.i.d. draw per arm from the prior; misspecification noise is added
// afterwards and, for Bernoulli outcomes, the result is clipped to [0,1].
MeanVector draw_true_means(const PriorSpec& prior, int n, const OutcomeModel& model, Rng& rng);

// One outcome draw. Bernoulli requires mean in [0,1] (throws std::domain_error).
double sample_outcome(double mean, const OutcomeModel& model, Rng& rng);

// One-column CSV (optional header line), one value per row.
std::vector<double> load_effect_sizes_csv(const std::string& path);

}  // namespace certlab
