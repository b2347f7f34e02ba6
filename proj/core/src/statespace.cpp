#include "fluxgate/statespace.hpp"

namespace fluxgate {

SystemState SystemState::pure(const HilbertLayout& layout, Vector amplitudes) {
    if (amplitudes.size() != layout.total_dim())
        throw DimensionError("SystemState::pure: amplitude vector has size " +
                             std::to_string(amplitudes.size()) + ", layout needs " +
                             std::to_string(layout.total_dim()));
    SystemState s;
    s.kind = Kind::Pure;
    s.layout = layout;
    s.vec = std::move(amplitudes);
    return s;
}

SystemState SystemState::mixed(const HilbertLayout& layout, Matrix density) {
    if (density.rows() != layout.total_dim() || density.cols() != layout.total_dim())
        throw DimensionError("SystemState::mixed: density matrix is " +
                             std::to_string(density.rows()) + "x" +
                             std::to_string(density.cols()) + ", layout needs " +
                             std::to_string(layout.total_dim()));
    SystemState s;
    s.kind = Kind::Mixed;
    s.layout = layout;
    s.rho = std::move(density);
    return s;
}

SystemState SystemState::to_density() const {
    if (!is_pure()) return *this;
    return mixed(layout, vec * vec.adjoint());
}

double SystemState::weight() const {
    return is_pure() ? vec.norm() : rho.trace().real();
}

Complex SystemState::overlap(const SystemState& other) const {
    if (!is_pure() || !other.is_pure())
        throw ContractViolation("SystemState::overlap requires pure states");
    return other.vec.dot(vec);
}

double SystemState::excited_cavity_population() const {
    double pop = 0.0;
    const int d = layout.total_dim();
    for (int idx = 0; idx < d; ++idx) {
        const auto [l1, l2, n] = layout.unflatten(idx);
        (void)l1;
        (void)l2;
        if (n == 0) continue;
        pop += is_pure() ? std::norm(vec(idx)) : rho(idx, idx).real();
    }
    return pop;
}

Matrix SystemState::reduced_qudit(int qubit_index) const {
    if (qubit_index != 1 && qubit_index != 2)
        throw IndexError("reduced_qudit: qubit_index must be 1 or 2");
    const Matrix full = is_pure() ? Matrix(vec * vec.adjoint()) : rho;
    Matrix red = Matrix::Zero(kLevels, kLevels);
    const int d = layout.total_dim();
    for (int r = 0; r < d; ++r) {
        const auto [r1, r2, rn] = layout.unflatten(r);
        for (int c = 0; c < d; ++c) {
            const auto [c1, c2, cn] = layout.unflatten(c);
            if (qubit_index == 1) {
                if (r2 == c2 && rn == cn) red(r1, c1) += full(r, c);
            } else {
                if (r1 == c1 && rn == cn) red(r2, c2) += full(r, c);
            }
        }
    }
    return red;
}

SystemState basis_ket(const HilbertLayout& layout, int l1, int l2, int n) {
    Vector v = Vector::Zero(layout.total_dim());
    v(layout.flatten(l1, l2, n)) = 1.0;
    return SystemState::pure(layout, std::move(v));
}

OperatorMatrix embed_qudit_operator(const HilbertLayout& layout, int qubit_index,
                                    const Matrix& local_op) {
    if (qubit_index != 1 && qubit_index != 2)
        throw IndexError("embed_qudit_operator: qubit_index must be 1 or 2");
    if (local_op.rows() != kLevels || local_op.cols() != kLevels)
        throw DimensionError("embed_qudit_operator: local operator must be 4x4, got " +
                             std::to_string(local_op.rows()) + "x" +
                             std::to_string(local_op.cols()));

    const int d = layout.total_dim();
    Matrix out = Matrix::Zero(d, d);
    for (int r = 0; r < d; ++r) {
        const auto [r1, r2, rn] = layout.unflatten(r);
        const int own = (qubit_index == 1) ? r1 : r2;
        for (int col_own = 0; col_own < kLevels; ++col_own) {
            const Complex v = local_op(own, col_own);
            if (v == Complex(0.0)) continue;
            const int c = (qubit_index == 1) ? layout.flatten(col_own, r2, rn)
                                             : layout.flatten(r1, col_own, rn);
            out(r, c) += v;
        }
    }
    const bool herm = local_op.isApprox(local_op.adjoint(), 0.0);
    return {std::move(out), herm};
}

OperatorMatrix cavity_annihilation(const HilbertLayout& layout) {
    const int d = layout.total_dim();
    Matrix out = Matrix::Zero(d, d);
    for (int l1 = 0; l1 < kLevels; ++l1)
        for (int l2 = 0; l2 < kLevels; ++l2)
            for (int n = 1; n <= layout.n_max; ++n)
                out(layout.flatten(l1, l2, n - 1), layout.flatten(l1, l2, n)) =
                    std::sqrt(static_cast<double>(n));
    return {std::move(out), false};
}

Matrix level_projector(int i, int j) {
    if (i < 0 || i >= kLevels || j < 0 || j >= kLevels)
        throw IndexError("level_projector: levels must be in 0..3");
    Matrix m = Matrix::Zero(kLevels, kLevels);
    m(i, j) = 1.0;
    return m;
}

}  // namespace fluxgate
