#include "kerramp/params.hpp"

#include "kerramp/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kerramp {

namespace {

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::ValidationError, std::string(name) + " must be finite");
    }
}

void require_nonnegative(double value, const char* name) {
    require_finite(value, name);
    if (value < 0.0) {
        std::ostringstream os;
        os << name << " must be >= 0 (got " << value << ")";
        throw Error(ErrorKind::ValidationError, os.str());
    }
}

}  // namespace

void SystemParams::validate() const {
    require_finite(omega_a, "omega_a");
    require_finite(omega_b, "omega_b");
    require_finite(omega_d, "omega_d");
    require_nonnegative(kappa_a, "kappa_a");
    require_nonnegative(kappa_b, "kappa_b");
    if (kappa_b <= 0.0) {
        throw Error(ErrorKind::ValidationError, "kappa_b must be > 0");
    }
    require_nonnegative(kappa_g, "kappa_g");
    require_nonnegative(J, "J");
    require_finite(K, "K");
}

std::vector<std::string> SystemParams::advisories() const {
    std::vector<std::string> out;
    const double floor_rate = std::min(kappa_a, kappa_b);
    // "much smaller" is read as at least two orders of magnitude.
    if (K != 0.0 && std::abs(K) > 1e-2 * floor_rate) {
        std::ostringstream os;
        os << "|K| = " << std::abs(K) << " is not small against min(kappa_a, kappa_b) = "
           << floor_rate << "; the weak-nonlinearity treatment may not hold";
        out.push_back(os.str());
    }
    return out;
}

cplx DriveParams::epsilon_in(double kappa_b) const {
    return std::polar(std::sqrt(2.0 * kappa_b * N_in), theta_0);
}

void DriveParams::validate() const {
    require_nonnegative(N_in, "N_in");
    require_finite(theta_0, "theta_0");
}

}  // namespace kerramp
