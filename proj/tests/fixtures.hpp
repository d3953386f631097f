#pragma once

// Reference device parameters and small helpers shared by the tests.

#include "kerramp/params.hpp"

#include <cmath>
#include <random>

namespace kerramp::test {

inline constexpr double kSqrt3Over2 = 0.86602540378443864676;

/// omega_b = omega_a + 0.2, omega_d = omega_a - 0.3, kappa_a = 0.25, J = sqrt(3)/2.
inline SystemParams device(double kappa_g = 0.85, double K = 1e-4) {
    SystemParams p;
    p.omega_a = 0.0;
    p.omega_b = 0.2;
    p.omega_d = -0.3;
    p.kappa_a = 0.25;
    p.kappa_b = 1.0;
    p.kappa_g = kappa_g;
    p.J = kSqrt3Over2;
    p.K = K;
    return p;
}

inline DriveParams drive(double n_in, double theta_0 = 0.0) {
    return DriveParams{n_in, theta_0};
}

inline double db(double x) { return 10.0 * std::log10(x); }

inline bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

/// Random parameter draws with fixed seeds so failures reproduce.
class ParamGenerator {
public:
    explicit ParamGenerator(unsigned seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    SystemParams any() {
        SystemParams p;
        p.omega_a = uniform(-1.0, 1.0);
        p.omega_b = uniform(-1.0, 1.0);
        p.omega_d = uniform(-1.0, 1.0);
        p.kappa_a = uniform(0.0, 2.0);
        p.kappa_b = uniform(0.2, 2.0);
        p.kappa_g = uniform(0.0, 2.0);
        p.J = uniform(0.0, 2.0);
        p.K = uniform(-1e-3, 1e-3);
        return p;
    }

    /// kappa_g = 0, K = 0, J > 0.
    SystemParams passive() {
        SystemParams p = any();
        p.kappa_g = 0.0;
        p.K = 0.0;
        p.kappa_a = uniform(0.01, 2.0);
        p.J = uniform(0.01, 2.0);
        return p;
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

}  // namespace kerramp::test
