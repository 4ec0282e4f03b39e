#ifndef AMFW_BANDED_HPP
#define AMFW_BANDED_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace amfw {

/// Singular pivot during a banded or dense factorization.
struct SingularMatrixError : std::runtime_error {
    int row;
    explicit SingularMatrixError(int r)
        : std::runtime_error("singular matrix at row " + std::to_string(r)), row(r) {}
};

/// Square banded matrix with lower/upper bandwidth <= 2 (pentadiagonal).
/// Entry (i, i+off) for off in [-2, 2] lives at band(i, off).
class BandedLineMatrix {
public:
    static constexpr int kBand = 2;

    BandedLineMatrix() = default;
    explicit BandedLineMatrix(int m) : m_(m), a_(static_cast<std::size_t>(m) * 5, 0.0) {}

    int size() const { return m_; }
    double& band(int i, int off) { return a_[static_cast<std::size_t>(i) * 5 + (off + 2)]; }
    double band(int i, int off) const { return a_[static_cast<std::size_t>(i) * 5 + (off + 2)]; }

    /// y = A x
    void apply(const double* x, double* y) const;
    /// test-only densification
    std::vector<double> dense() const;

    /// this = alpha * this; diagonal += beta  (forms beta*I + alpha*A in place)
    void scale_shift(double alpha, double beta);

private:
    int m_ = 0;
    std::vector<double> a_;
};

/// LU factors of a pentadiagonal matrix with partial pivoting. Fill extends
/// the upper bandwidth to 4.
class BandedFactorization {
public:
    static BandedFactorization factorize(const BandedLineMatrix& a);

    void solve(double* x) const;  // in place
    int size() const { return m_; }

private:
    static constexpr int kl = 2, ku = 4;  // ku includes pivoting fill
    int m_ = 0;
    std::vector<double> w_;    // row i holds offsets -2..4 -> w_[i*7 + off+2]
    std::vector<int> piv_;     // piv_[k] in [k, k+2]
    double& w(int i, int off) { return w_[static_cast<std::size_t>(i) * 7 + (off + 2)]; }
    double w(int i, int off) const { return w_[static_cast<std::size_t>(i) * 7 + (off + 2)]; }
};

/// Dense LU with partial pivoting; used by the Rosenbrock reference stepper.
class DenseLU {
public:
    /// a is row-major n x n, overwritten conceptually (copied internally).
    DenseLU(const std::vector<double>& a, int n);
    void solve(std::vector<double>& x) const;

private:
    int n_;
    std::vector<double> lu_;
    std::vector<int> piv_;
};

}  // namespace amfw

#endif
