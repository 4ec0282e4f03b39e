#include "amfw/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace amfw {

void BandedLineMatrix::apply(const double* x, double* y) const {
    for (int i = 0; i < m_; ++i) {
        double s = 0.0;
        int lo = std::max(-kBand, -i);
        int hi = std::min(kBand, m_ - 1 - i);
        for (int off = lo; off <= hi; ++off) s += band(i, off) * x[i + off];
        y[i] = s;
    }
}

std::vector<double> BandedLineMatrix::dense() const {
    std::vector<double> d(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i)
        for (int off = std::max(-kBand, -i); off <= std::min(kBand, m_ - 1 - i); ++off)
            d[static_cast<std::size_t>(i) * m_ + i + off] = band(i, off);
    return d;
}

void BandedLineMatrix::scale_shift(double alpha, double beta) {
    for (double& x : a_) x *= alpha;
    for (int i = 0; i < m_; ++i) band(i, 0) += beta;
}

BandedFactorization BandedFactorization::factorize(const BandedLineMatrix& a) {
    BandedFactorization f;
    const int m = a.size();
    f.m_ = m;
    f.w_.assign(static_cast<std::size_t>(m) * 7, 0.0);
    f.piv_.assign(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i)
        for (int off = std::max(-2, -i); off <= std::min(2, m - 1 - i); ++off)
            f.w(i, off) = a.band(i, off);

    for (int k = 0; k < m; ++k) {
        int last = std::min(k + kl, m - 1);
        int p = k;
        for (int r = k + 1; r <= last; ++r)
            if (std::fabs(f.w(r, k - r)) > std::fabs(f.w(p, k - p))) p = r;
        if (std::fabs(f.w(p, k - p)) < 1e-300) throw SingularMatrixError(k);
        f.piv_[k] = p;
        if (p != k) {
            // swap rows k and p; both have support within columns [k, k+ku]
            for (int c = k; c <= std::min(k + ku, m - 1); ++c)
                std::swap(f.w(k, c - k), f.w(p, c - p));
        }
        double pivot = f.w(k, 0);
        for (int r = k + 1; r <= last; ++r) {
            double l = f.w(r, k - r) / pivot;
            f.w(r, k - r) = l;  // store multiplier in the eliminated slot
            if (l != 0.0)
                for (int c = k + 1; c <= std::min(k + ku, m - 1); ++c)
                    f.w(r, c - r) -= l * f.w(k, c - k);
        }
    }
    return f;
}

void BandedFactorization::solve(double* x) const {
    const int m = m_;
    // forward: apply P and L
    for (int k = 0; k < m; ++k) {
        if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
        for (int r = k + 1; r <= std::min(k + kl, m - 1); ++r) x[r] -= w(r, k - r) * x[k];
    }
    // back substitution with U
    for (int i = m - 1; i >= 0; --i) {
        double s = x[i];
        for (int c = i + 1; c <= std::min(i + ku, m - 1); ++c) s -= w(i, c - i) * x[c];
        x[i] = s / w(i, 0);
    }
}

DenseLU::DenseLU(const std::vector<double>& a, int n) : n_(n), lu_(a), piv_(n) {
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int r = k + 1; r < n; ++r)
            if (std::fabs(lu_[static_cast<std::size_t>(r) * n + k]) >
                std::fabs(lu_[static_cast<std::size_t>(p) * n + k]))
                p = r;
        if (std::fabs(lu_[static_cast<std::size_t>(p) * n + k]) < 1e-300)
            throw SingularMatrixError(k);
        piv_[k] = p;
        if (p != k)
            for (int c = 0; c < n; ++c)
                std::swap(lu_[static_cast<std::size_t>(k) * n + c],
                          lu_[static_cast<std::size_t>(p) * n + c]);
        double pivot = lu_[static_cast<std::size_t>(k) * n + k];
        for (int r = k + 1; r < n; ++r) {
            double l = lu_[static_cast<std::size_t>(r) * n + k] / pivot;
            lu_[static_cast<std::size_t>(r) * n + k] = l;
            if (l != 0.0)
                for (int c = k + 1; c < n; ++c)
                    lu_[static_cast<std::size_t>(r) * n + c] -=
                        l * lu_[static_cast<std::size_t>(k) * n + c];
        }
    }
}

void DenseLU::solve(std::vector<double>& x) const {
    for (int k = 0; k < n_; ++k) {
        if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
        for (int r = k + 1; r < n_; ++r)
            x[r] -= lu_[static_cast<std::size_t>(r) * n_ + k] * x[k];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        double s = x[i];
        for (int c = i + 1; c < n_; ++c) s -= lu_[static_cast<std::size_t>(i) * n_ + c] * x[c];
        x[i] = s / lu_[static_cast<std::size_t>(i) * n_ + i];
    }
}

}  // namespace amfw
