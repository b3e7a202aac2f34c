#pragma once

namespace dirtyflash::limits {

struct KnownInterferenceCapacity {
    double c_min = 0.0;  ///< interference unknown to both ends
    double c_max = 0.0;  ///< interference known to the encoder
};

struct DefectCapacity {
    double c_min_plus = 0.0;  ///< defect states unknown
    double c_max_plus = 0.0;  ///< defect states known
};

/// Binary entropy in bits, with h(0) = h(1) = 0.
double binary_entropy(double x);

/// Throws std::invalid_argument if sigma_z_sq <= 0 or P, sigma_s_sq < 0.
KnownInterferenceCapacity dpc_capacities(double power, double sigma_s_sq, double sigma_z_sq);

/// epsilon in [0, 1], crossover p in [0, 1/2]; throws std::invalid_argument otherwise.
DefectCapacity defect_capacities(double epsilon, double p);

}  // namespace dirtyflash::limits
