#include "dirtyflash/capacity.hpp"

#include <cmath>
#include <stdexcept>

namespace dirtyflash::limits {

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

KnownInterferenceCapacity dpc_capacities(double power, double sigma_s_sq, double sigma_z_sq) {
    if (!(sigma_z_sq > 0.0)) throw std::invalid_argument("noise variance must be positive");
    if (power < 0.0 || sigma_s_sq < 0.0) throw std::invalid_argument("power and variances must be >= 0");
    return {0.5 * std::log2(1.0 + power / (sigma_s_sq + sigma_z_sq)),
            0.5 * std::log2(1.0 + power / sigma_z_sq)};
}

DefectCapacity defect_capacities(double epsilon, double p) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
    if (!(p >= 0.0 && p <= 0.5)) throw std::invalid_argument("p must lie in [0, 1/2]");
    const double p_eff = (1.0 - epsilon) * p + epsilon / 2.0;
    return {1.0 - binary_entropy(p_eff), (1.0 - epsilon) * (1.0 - binary_entropy(p))};
}

}  // namespace dirtyflash::limits
