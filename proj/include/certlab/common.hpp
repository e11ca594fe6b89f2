#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace certlab {

using Rng = std::mt19937_64;

// True arm means mu_1..mu_n.
using MeanVector = std::vector<double>;

// Bad configuration (invalid prior parameters, unsupported pairings, ...).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Budget too small for the requested allocation.
struct infeasible_design : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An arm lacks the samples a policy needs.
struct insufficient_data : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A policy produced an unusable retained set.
struct policy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered set of retained arm indices. Non-empty, no duplicates.
struct ArmSet {
    std::vector<int> arms;

    ArmSet() = default;
    explicit ArmSet(std::vector<int> a) : arms(std::move(a)) {}

    int size() const { return static_cast<int>(arms.size()); }
    bool empty() const { return arms.empty(); }
    bool contains(int arm) const {
        for (int a : arms)
            if (a == arm) return true;
        return false;
    }
    static ArmSet all(int n) {
        ArmSet s;
        s.arms.reserve(n);
        for (int i = 0; i < n; ++i) s.arms.push_back(i);
        return s;
    }
    // Throws policy_error on duplicates, emptiness, or out-of-range indices.
    void validate(int n) const;
};

}  // namespace certlab
