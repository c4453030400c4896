#include "rsep/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsep {

QMatrix::QMatrix(const Instance& inst)
    : num_mvnos_(inst.num_mvnos()),
      num_bs_(inst.num_bs()),
      block_(inst.grid_size()),
      dim_(inst.num_vars()),
      adjacency_(inst.adjacency()) {}

// (Qv)[m,b,tau] = sum_{b'} y_{b,b'} v[m,b',tau]; the I_M and I_Z factors
// make Q act on the BS index alone.
template <typename T>
static std::vector<T> kron_matvec(const std::vector<std::vector<int>>& y, int num_mvnos,
                                  int num_bs, int block, const std::vector<T>& v) {
    std::vector<T> out(v.size(), T(0));
    for (int m = 0; m < num_mvnos; ++m) {
        const std::size_t base = static_cast<std::size_t>(m) * num_bs * block;
        for (int b1 = 0; b1 < num_bs; ++b1)
            for (int b2 = 0; b2 < num_bs; ++b2) {
                if (!y[b1][b2]) continue;
                const T* src = v.data() + base + static_cast<std::size_t>(b2) * block;
                T* dst = out.data() + base + static_cast<std::size_t>(b1) * block;
                for (int tau = 0; tau < block; ++tau) dst[tau] += src[tau];
            }
    }
    return out;
}

std::vector<double> QMatrix::matvec(const std::vector<double>& v) const {
    if (static_cast<std::int64_t>(v.size()) != dim_)
        throw std::invalid_argument("matvec: vector length must equal V");
    return kron_matvec(adjacency_, num_mvnos_, num_bs_, block_, v);
}

std::vector<std::int64_t> QMatrix::matvec(const std::vector<std::int64_t>& v) const {
    if (static_cast<std::int64_t>(v.size()) != dim_)
        throw std::invalid_argument("matvec: vector length must equal V");
    return kron_matvec(adjacency_, num_mvnos_, num_bs_, block_, v);
}

std::vector<std::vector<int>> QMatrix::dense(std::int64_t cap) const {
    if (dim_ > cap)
        throw std::length_error("dense Q requested above the materialization cap");
    const int n = static_cast<int>(dim_);
    std::vector<std::vector<int>> q(n, std::vector<int>(n, 0));
    for (int m = 0; m < num_mvnos_; ++m)
        for (int b1 = 0; b1 < num_bs_; ++b1)
            for (int b2 = 0; b2 < num_bs_; ++b2) {
                if (!adjacency_[b1][b2]) continue;
                int row0 = (m * num_bs_ + b1) * block_;
                int col0 = (m * num_bs_ + b2) * block_;
                for (int tau = 0; tau < block_; ++tau) q[row0 + tau][col0 + tau] = 1;
            }
    return q;
}

double QMatrix::largest_eigenvalue() const {
    bool nonzero = false;
    for (int b1 = 0; b1 < num_bs_ && !nonzero; ++b1)
        for (int b2 = 0; b2 < num_bs_; ++b2)
            if (adjacency_[b1][b2]) { nonzero = true; break; }
    if (!nonzero)
        throw std::domain_error("no interference; RSEP objective identically zero");

    std::vector<double> y(static_cast<std::size_t>(num_bs_) * num_bs_);
    for (int b1 = 0; b1 < num_bs_; ++b1)
        for (int b2 = 0; b2 < num_bs_; ++b2)
            y[static_cast<std::size_t>(b1) * num_bs_ + b2] = adjacency_[b1][b2];
    std::vector<double> eig = detail::symmetric_eigenvalues(std::move(y), num_bs_);
    return eig.back();
}

namespace detail {

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off <= 1e-30) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }

    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace detail

} // namespace rsep
