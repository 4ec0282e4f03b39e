#include "amfw/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace amfw {

namespace {

/// Dense complex solve, s <= 4; partial pivoting.
void solve_small(std::vector<std::complex<double>>& M, std::vector<std::complex<double>>& rhs,
                 int n) {
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(M[static_cast<std::size_t>(i * n + k)]) >
                std::abs(M[static_cast<std::size_t>(piv * n + k)]))
                piv = i;
        if (std::abs(M[static_cast<std::size_t>(piv * n + k)]) < 1e-300)
            throw std::runtime_error("singular stage system in stability evaluation");
        if (piv != k) {
            for (int j = k; j < n; ++j)
                std::swap(M[static_cast<std::size_t>(k * n + j)],
                          M[static_cast<std::size_t>(piv * n + j)]);
            std::swap(rhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(piv)]);
        }
        for (int i = k + 1; i < n; ++i) {
            const std::complex<double> f =
                M[static_cast<std::size_t>(i * n + k)] / M[static_cast<std::size_t>(k * n + k)];
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j)
                M[static_cast<std::size_t>(i * n + j)] -= f * M[static_cast<std::size_t>(k * n + j)];
            rhs[static_cast<std::size_t>(i)] -= f * rhs[static_cast<std::size_t>(k)];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        std::complex<double> s = rhs[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            s -= M[static_cast<std::size_t>(i * n + j)] * rhs[static_cast<std::size_t>(j)];
        rhs[static_cast<std::size_t>(i)] = s / M[static_cast<std::size_t>(i * n + i)];
    }
}

struct XorShift {
    std::uint64_t state;
    explicit XorShift(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double next() {  // uniform in [0, 1)
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
};

}  // namespace

std::complex<double> eval_R(const AMFWTableau& tb,
                            const std::vector<std::complex<double>>& z) {
    const int s = tb.s;
    std::complex<double> zsum = 0.0, pi = 1.0;
    for (const auto& zj : z) {
        zsum += zj;
        pi *= 1.0 - tb.theta * zj;
    }
    std::vector<std::complex<double>> M(static_cast<std::size_t>(s * s));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            M[static_cast<std::size_t>(i * s + j)] =
                (i == j ? pi : 0.0) - tb.l(i, j) - zsum * tb.a(i, j);
    std::vector<std::complex<double>> rhs(static_cast<std::size_t>(s), 1.0);
    solve_small(M, rhs, s);
    std::complex<double> bt = 0.0;
    for (int i = 0; i < s; ++i) bt += tb.b[static_cast<std::size_t>(i)] * rhs[static_cast<std::size_t>(i)];
    return 1.0 + zsum * bt;
}

StabilityReport check_theorem1_condition(const AMFWTableau& tb, int d, int samples,
                                         double c_trial, std::uint64_t seed,
                                         std::vector<StabilitySample>* all_samples) {
    if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("invalid dimension");
    XorShift rng(seed);
    StabilityReport rep;
    rep.samples = samples;
    rep.c_trial = c_trial;
    rep.min_r_plus_1 = std::numeric_limits<double>::infinity();
    rep.max_upper_violation = -std::numeric_limits<double>::infinity();
    rep.c_limit = std::numeric_limits<double>::infinity();
    int ok = 0;
    const double lo = std::log(1e-4), hi = std::log(1e8);
    StabilitySample worst_low, worst_up;
    double worst_low_key = std::numeric_limits<double>::infinity();
    double worst_up_key = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < samples; ++n) {
        StabilitySample smp;
        smp.x.resize(static_cast<std::size_t>(d));
        std::vector<std::complex<double>> z(static_cast<std::size_t>(d));
        double xsum = 0.0, pi = 1.0;
        for (int j = 0; j < d; ++j) {
            const double mag = std::exp(lo + (hi - lo) * rng.next());
            smp.x[static_cast<std::size_t>(j)] = -mag;
            z[static_cast<std::size_t>(j)] = -mag;
            xsum += -mag;
            pi *= 1.0 + tb.theta * mag;
        }
        smp.R = eval_R(tb, z).real();
        smp.bound_term = xsum / pi;  // negative
        smp.upper_gap = smp.R - 1.0 - c_trial * smp.bound_term;
        rep.min_r_plus_1 = std::min(rep.min_r_plus_1, smp.R + 1.0);
        rep.max_upper_violation = std::max(rep.max_upper_violation, smp.upper_gap);
        // R - 1 <= C * bound_term with bound_term < 0  <=>  C <= (R-1)/bound_term
        rep.c_limit = std::min(rep.c_limit, (smp.R - 1.0) / smp.bound_term);
        if (smp.R + 1.0 >= 0.0 && smp.upper_gap <= 1e-12) ++ok;
        if (smp.R + 1.0 < worst_low_key) {
            worst_low_key = smp.R + 1.0;
            worst_low = smp;
        }
        if (smp.upper_gap > worst_up_key) {
            worst_up_key = smp.upper_gap;
            worst_up = smp;
        }
        if (all_samples) all_samples->push_back(smp);
    }
    rep.satisfied_fraction = static_cast<double>(ok) / samples;
    rep.worst = {worst_low, worst_up};
    return rep;
}

}  // namespace amfw
