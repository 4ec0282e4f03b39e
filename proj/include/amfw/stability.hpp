#ifndef AMFW_STABILITY_HPP
#define AMFW_STABILITY_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "amfw/integrator.hpp"

namespace amfw {

/// Stability function of one AMF-W step on the split scalar test problem:
///   R(z_1,...,z_d) = 1 + z b^T (Pi I_s - L - z A)^{-1} 1,
/// with z = sum z_j and Pi = prod (1 - theta z_j).
std::complex<double> eval_R(const AMFWTableau& tb,
                            const std::vector<std::complex<double>>& z);

/// One sampled point of the boundedness check.
struct StabilitySample {
    std::vector<double> x;  // all-negative real arguments
    double R;
    double bound_term;  // (x_1+...+x_d) / prod(1 - theta x_j), negative here
    double upper_gap;   // R - 1 - C_trial * bound_term (<= 0 when satisfied)
};

/// Monte-Carlo check of the two-sided bound
///   -1 <= R(x) <= 1 + C (x_1+...+x_d)/((1-theta x_1)...(1-theta x_d))
/// over x_j < 0 with |x_j| log-uniform in [1e-4, 1e8].
struct StabilityReport {
    int samples = 0;
    double c_trial = 0.0;
    double min_r_plus_1 = 0.0;       // negative => lower bound violated somewhere
    double max_upper_violation = 0.0;  // max over samples of R - 1 - C_trial*term
    double satisfied_fraction = 0.0;   // both bounds at C_trial
    /// Largest C for which the sampled upper bound holds everywhere
    /// (the bound term is negative on the sampled orthant, so the admissible
    /// constants form an interval [0, c_limit]); negative when some sample
    /// already violates R <= 1.
    double c_limit = 0.0;
    std::vector<StabilitySample> worst;  // a few most-violating samples
};

StabilityReport check_theorem1_condition(const AMFWTableau& tb, int d, int samples,
                                         double c_trial, std::uint64_t seed,
                                         std::vector<StabilitySample>* all_samples = nullptr);

}  // namespace amfw

#endif
