#pragma once

#include "lsa/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace lsa::linalg {

// Fraction-free (Bareiss) row echelon form over an exact field.
template <typename Scalar>
class FractionFreeEchelon {
public:
    using MatrixType = Mat<Scalar>;

    FractionFreeEchelon() = default;
    template <typename Derived>
    explicit FractionFreeEchelon(const Eigen::MatrixBase<Derived>& a) { compute(a); }

    template <typename Derived>
    FractionFreeEchelon& compute(const Eigen::MatrixBase<Derived>& a) {
        u_ = a;
        pivots_.clear();
        const Eigen::Index rows = u_.rows(), cols = u_.cols();
        Scalar prev(1);
        Eigen::Index r = 0;
        for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
            Eigen::Index p = r;
            while (p < rows && u_(p, c) == 0) ++p;
            if (p == rows) continue;
            if (p != r) u_.row(p).swap(u_.row(r));
            for (Eigen::Index i = r + 1; i < rows; ++i) {
                for (Eigen::Index j = c + 1; j < cols; ++j)
                    u_(i, j) = (u_(r, c) * u_(i, j) - u_(i, c) * u_(r, j)) / prev;
                u_(i, c) = 0;
            }
            prev = u_(r, c);
            pivots_.push_back(c);
            ++r;
        }
        return *this;
    }

    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots_.size()); }
    const std::vector<Eigen::Index>& pivots() const { return pivots_; }
    const MatrixType& echelon() const { return u_; }

    // Columns form a basis of the right kernel.
    MatrixType kernel() const {
        const Eigen::Index cols = u_.cols();
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivots_) is_pivot[c] = true;
        std::vector<Eigen::Index> free;
        for (Eigen::Index c = 0; c < cols; ++c)
            if (!is_pivot[c]) free.push_back(c);
        MatrixType k(cols, static_cast<Eigen::Index>(free.size()));
        k.setZero();
        for (std::size_t f = 0; f < free.size(); ++f) {
            k(free[f], f) = 1;
            for (Eigen::Index r = rank() - 1; r >= 0; --r) {
                const Eigen::Index pc = pivots_[r];
                Scalar s(0);
                for (Eigen::Index j = pc + 1; j < cols; ++j)
                    if (k(j, f) != 0) s += u_(r, j) * k(j, f);
                k(pc, f) = -s / u_(r, pc);
            }
        }
        return k;
    }

private:
    MatrixType u_;
    std::vector<Eigen::Index> pivots_;
};

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    return FractionFreeEchelon<Scalar>(a).rank();
}

template <typename Derived>
Mat<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    return FractionFreeEchelon<Scalar>(a).kernel();
}

// A solution of A x = b, or nothing if the system is inconsistent.
template <typename DA, typename DB>
std::optional<Vec<typename DA::Scalar>> solve(const Eigen::MatrixBase<DA>& a,
                                              const Eigen::MatrixBase<DB>& b) {
    using Scalar = typename DA::Scalar;
    Mat<Scalar> aug(a.rows(), a.cols() + 1);
    aug << a, b;
    FractionFreeEchelon<Scalar> ff(aug);
    const auto& piv = ff.pivots();
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    const auto& u = ff.echelon();
    Vec<Scalar> x = Vec<Scalar>::Zero(a.cols());
    for (Eigen::Index r = ff.rank() - 1; r >= 0; --r) {
        const Eigen::Index pc = piv[r];
        Scalar s = u(r, a.cols());
        for (Eigen::Index j = pc + 1; j < a.cols(); ++j)
            if (x(j) != 0) s -= u(r, j) * x(j);
        x(pc) = s / u(r, pc);
    }
    return x;
}

template <typename Derived>
std::optional<Mat<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = a.rows();
    if (a.cols() != n) return std::nullopt;
    Mat<Scalar> inv(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        auto x = solve(a, Vec<Scalar>::Unit(n, c));
        if (!x) return std::nullopt;
        inv.col(c) = *x;
    }
    if (rank(a) != n) return std::nullopt;
    return inv;
}

// Reduced row echelon rows spanning the row space.
template <typename Derived>
Mat<typename Derived::Scalar> row_basis(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    FractionFreeEchelon<Scalar> ff(a);
    Mat<Scalar> out = ff.echelon().topRows(ff.rank());
    for (Eigen::Index r = ff.rank() - 1; r >= 0; --r) {
        const auto pc = ff.pivots()[r];
        out.row(r) /= out(r, pc);
        for (Eigen::Index q = 0; q < r; ++q)
            if (out(q, pc) != 0) out.row(q) -= out(q, pc) * out.row(r);
    }
    return out;
}

}  // namespace lsa::linalg
