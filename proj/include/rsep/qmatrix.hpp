#ifndef RSEP_QMATRIX_HPP
#define RSEP_QMATRIX_HPP

#include <cstdint>
#include <vector>

#include "rsep/instance.hpp"

namespace rsep {

/// The objective matrix Q = I_M (x) Y (x) I_Z with Z = N_RB * T, kept in
/// implicit Kronecker form. Q is hollow (zero diagonal), symmetric, and
/// indefinite whenever Y has an edge. Dense materialization is available
/// only for small dimensions; everything else goes through matvec.
class QMatrix {
public:
    static constexpr std::int64_t kDefaultDenseCap = 4096;

    explicit QMatrix(const Instance& inst);

    std::int64_t dim() const { return dim_; }

    /// out = Q v, computed in O(V * B) via the block structure. Throws
    /// std::invalid_argument on a length mismatch.
    std::vector<double> matvec(const std::vector<double>& v) const;
    std::vector<std::int64_t> matvec(const std::vector<std::int64_t>& v) const;

    /// Row-major dense Q (entries are 0/1). Throws std::length_error when
    /// dim() exceeds the cap.
    std::vector<std::vector<int>> dense(std::int64_t cap = kDefaultDenseCap) const;

    /// Largest eigenvalue z* of Q. Every eigenvalue of Q is an eigenvalue
    /// of Y (with multiplicity M * Z), so this eigensolves the B x B
    /// adjacency matrix only. Throws std::domain_error when Y is all zero.
    double largest_eigenvalue() const;

private:
    int num_mvnos_;
    int num_bs_;
    int block_; // Z = N_RB * T
    std::int64_t dim_;
    std::vector<std::vector<int>> adjacency_;
};

namespace detail {

/// Eigenvalues of a dense symmetric matrix (row-major, n x n) by cyclic
/// Jacobi rotations, ascending order. Intended for small n (adjacency
/// matrices); converges to machine precision.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

} // namespace detail

} // namespace rsep

#endif // RSEP_QMATRIX_HPP
