#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <tuple>

#include "fluxgate/errors.hpp"

namespace fluxgate {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kLevels = 4;  // four-level qudits throughout

/// Composite Hilbert space: qudit 1 (x) qudit 2 (x) truncated cavity.
/// Flattening is row-major with the cavity index fastest:
/// index = (l1 * 4 + l2) * (n_max + 1) + n.
struct HilbertLayout {
    std::array<int, 2> qudit_dims{kLevels, kLevels};
    int n_max = 2;

    explicit HilbertLayout(int n_max_ = 2) : n_max(n_max_) {
        if (n_max < 1)
            throw ConfigError("HilbertLayout: n_max must be >= 1, got " +
                              std::to_string(n_max));
    }

    int cavity_dim() const { return n_max + 1; }
    int total_dim() const { return qudit_dims[0] * qudit_dims[1] * cavity_dim(); }

    int flatten(int l1, int l2, int n) const {
        check_indices(l1, l2, n);
        return (l1 * qudit_dims[1] + l2) * cavity_dim() + n;
    }

    std::tuple<int, int, int> unflatten(int idx) const {
        if (idx < 0 || idx >= total_dim())
            throw IndexError("HilbertLayout: flat index " + std::to_string(idx) +
                             " out of range");
        const int n = idx % cavity_dim();
        const int rest = idx / cavity_dim();
        return {rest / qudit_dims[1], rest % qudit_dims[1], n};
    }

    void check_indices(int l1, int l2, int n) const {
        if (l1 < 0 || l1 >= qudit_dims[0] || l2 < 0 || l2 >= qudit_dims[1] ||
            n < 0 || n > n_max)
            throw IndexError("HilbertLayout: basis tuple (" + std::to_string(l1) +
                             "," + std::to_string(l2) + "," + std::to_string(n) +
                             ") out of range");
    }

    bool operator==(const HilbertLayout&) const = default;
};

/// Pure state vector or density matrix over the composite space.
struct SystemState {
    enum class Kind { Pure, Mixed };

    Kind kind = Kind::Pure;
    HilbertLayout layout;
    Vector vec;   // valid when kind == Pure
    Matrix rho;   // valid when kind == Mixed

    static SystemState pure(const HilbertLayout& layout, Vector amplitudes);
    static SystemState mixed(const HilbertLayout& layout, Matrix density);

    bool is_pure() const { return kind == Kind::Pure; }

    /// |psi><psi| for a pure state; identity for a mixed one.
    SystemState to_density() const;

    /// L2 norm (pure) or trace real part (mixed).
    double weight() const;

    /// <other|this> for pure states.
    Complex overlap(const SystemState& other) const;

    /// Population of states with at least one cavity photon.
    double excited_cavity_population() const;

    /// Reduced density matrix of qudit 1 or 2 (qubit_index in {1,2}).
    Matrix reduced_qudit(int qubit_index) const;
};

/// Dense operator on the composite space with a Hermiticity hint.
struct OperatorMatrix {
    Matrix entries;
    bool hermitian = false;
};

/// Basis ket |l1>|l2>|n>_c.
SystemState basis_ket(const HilbertLayout& layout, int l1, int l2, int n);

/// I (x) ... (x) local_op (x) ... (x) I with local_op on the given qudit
/// (qubit_index in {1,2}) and identity on the cavity factor.
OperatorMatrix embed_qudit_operator(const HilbertLayout& layout, int qubit_index,
                                    const Matrix& local_op);

/// Cavity annihilation operator a, identity on both qudits; a|0>_c = 0,
/// truncated at n_max.
OperatorMatrix cavity_annihilation(const HilbertLayout& layout);

/// |i><j| on a single qudit, as a 4x4 local operator.
Matrix level_projector(int i, int j);

}  // namespace fluxgate
