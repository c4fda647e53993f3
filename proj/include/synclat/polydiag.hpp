#pragma once

// Partition <-> polydiagonal dictionary and the P-operator.

#include <synclat/partition.hpp>
#include <synclat/subspace.hpp>

#include <cstddef>
#include <vector>

namespace synclat {

/// The polydiagonal of pi: vectors constant on every class. The indicator
/// rows of classes ordered by smallest member are already in reduced form.
template <class Field = RationalField>
Subspace<Field> polydiagonal_of(const Partition& pi, const Field& field = Field{}) {
    Matrix<Field> rows(field, 0, pi.size());
    for (const auto& cls : pi.classes()) {
        std::vector<typename Field::value_type> v(pi.size(), field.zero());
        for (auto c : cls) v[c] = field.one();
        rows.append_row(v);
    }
    return Subspace<Field>::span(rows);
}

/// P(W): cells i ~ j iff x_i = x_j holds on every basis vector of w. The
/// zero subspace maps to the one-class partition.
template <class Field>
Partition smallest_polydiagonal(const Subspace<Field>& w) {
    const std::size_t n = w.ambient_dim();
    const Field& f = w.field();
    std::vector<int> labels(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] != -1) continue;
        labels[i] = next;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (labels[j] != -1) continue;
            bool equal = true;
            for (std::size_t r = 0; r < w.dim() && equal; ++r) equal = f.equal(w.basis()(r, i), w.basis()(r, j));
            if (equal) labels[j] = next;
        }
        ++next;
    }
    return Partition(labels);
}

/// w ∩ Δ_pi, computed in the coordinates of w's basis.
template <class Field>
Subspace<Field> intersect_polydiagonal(const Subspace<Field>& w, const Partition& pi) {
    const Field& f = w.field();
    const std::size_t k = w.dim();
    if (k == 0) return w;
    Matrix<Field> constraints(f, 0, k);
    std::vector<typename Field::value_type> row(k);
    for (const auto& cls : pi.classes()) {
        for (std::size_t m = 1; m < cls.size(); ++m) {
            bool nonzero = false;
            for (std::size_t r = 0; r < k; ++r) {
                row[r] = f.sub(w.basis()(r, cls[0]), w.basis()(r, cls[m]));
                nonzero = nonzero || !f.is_zero(row[r]);
            }
            if (nonzero) constraints.append_row(row);
        }
    }
    if (constraints.rows() == 0) return w;
    auto coeffs = nullspace(constraints);
    if (coeffs.dim() == k) return w;
    return Subspace<Field>::span(coeffs.basis() * w.basis());
}

}  // namespace synclat
