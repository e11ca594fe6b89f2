#include "certlab/arm_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "certlab/rng.hpp"

namespace certlab {

void ArmSet::validate(int n) const {
    if (arms.empty()) throw policy_error("retained set is empty");
    std::vector<bool> seen(n, false);
    for (int a : arms) {
        if (a < 0 || a >= n) throw policy_error("arm index out of range");
        if (seen[a]) throw policy_error("duplicate arm in retained set");
        seen[a] = true;
    }
}

double beta_sample(double a, double b, Rng& rng) {
    std::gamma_distribution<double> ga(a, 1.0);
    std::gamma_distribution<double> gb(b, 1.0);
    double x = ga(rng);
    double y = gb(rng);
    return x / (x + y);
}

void PriorSpec::validate() const {
    switch (kind) {
        case PriorKind::uniform01:
            break;
        case PriorKind::beta:
            if (!(alpha > 0.0) || !(beta > 0.0))
                throw config_error("beta prior parameters must be strictly positive");
            break;
        case PriorKind::discrete:
            if (values.empty()) throw config_error("discrete prior needs a non-empty value list");
            break;
        case PriorKind::point:
            if (point_means.empty()) throw config_error("point prior needs a mean vector");
            break;
    }
    if (misspec && misspec->variance < 0.0)
        throw config_error("misspecification variance must be non-negative");
}

void OutcomeModel::validate() const {
    if (kind == OutcomeKind::gaussian && !(sd > 0.0))
        throw config_error("gaussian outcome sd must be positive");
}

MeanVector draw_true_means(const PriorSpec& prior, int n, const OutcomeModel& model, Rng& rng) {
    prior.validate();
    model.validate();
    if (n < 1) throw config_error("arm count must be at least 1");

    MeanVector means(n);
    switch (prior.kind) {
        case PriorKind::uniform01: {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            for (int i = 0; i < n; ++i) means[i] = u(rng);
            break;
        }
        case PriorKind::beta: {
            for (int i = 0; i < n; ++i) means[i] = beta_sample(prior.alpha, prior.beta, rng);
            break;
        }
        case PriorKind::discrete: {
            std::uniform_int_distribution<size_t> pick(0, prior.values.size() - 1);
            for (int i = 0; i < n; ++i) means[i] = prior.values[pick(rng)];
            break;
        }
        case PriorKind::point: {
            if (static_cast<int>(prior.point_means.size()) != n)
                throw config_error("point prior length does not match arm count");
            means = prior.point_means;
            break;
        }
    }

    if (prior.misspec) {
        std::normal_distribution<double> noise(prior.misspec->mean,
                                               std::sqrt(prior.misspec->variance));
        for (double& m : means) m += noise(rng);
    }
    if (model.kind == OutcomeKind::bernoulli) {
        if (prior.kind == PriorKind::point || prior.kind == PriorKind::discrete) {
            for (double m : means)
                if (!prior.misspec && (m < 0.0 || m > 1.0))
                    throw config_error("bernoulli outcomes need means in [0,1]");
        }
        // Noise can push a mean outside [0,1]; clip so the outcome model stays valid.
        for (double& m : means) m = std::clamp(m, 0.0, 1.0);
    }
    return means;
}

double sample_outcome(double mean, const OutcomeModel& model, Rng& rng) {
    if (model.kind == OutcomeKind::bernoulli) {
        if (mean < 0.0 || mean > 1.0)
            throw std::domain_error("bernoulli mean outside [0,1]");
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return u(rng) < mean ? 1.0 : 0.0;
    }
    std::normal_distribution<double> z(0.0, 1.0);
    return mean + model.sd * z(rng);
}

std::vector<double> load_effect_sizes_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open effect-size file: " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        // Strip whitespace and skip blanks/comments/header.
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(b, e - b + 1);
        if (tok[0] == '#') continue;
        try {
            size_t pos = 0;
            double v = std::stod(tok, &pos);
            if (pos == tok.size()) values.push_back(v);
        } catch (const std::exception&) {
            if (values.empty()) continue;  // header line
            throw config_error("malformed effect-size row: " + tok);
        }
    }
    if (values.empty()) throw config_error("effect-size file has no values: " + path);
    return values;
}

}  // namespace certlab
