#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "covham/expression.hpp"
#include "covham/linalg.hpp"

namespace covham {

/// Matrix-valued function of the state, evaluable with dual scalars so entry
/// partial derivatives are exact.
class MatrixField {
public:
    virtual ~MatrixField() = default;

    virtual int dimension() const noexcept = 0;

    virtual SquareMatrix<double> eval(std::span<const double> x) const = 0;
    virtual SquareMatrix<Dual1> eval(std::span<const Dual1> x) const = 0;
    virtual SquareMatrix<Dual2> eval(std::span<const Dual2> x) const = 0;
};

using MatrixFieldPtr = std::shared_ptr<const MatrixField>;

MatrixFieldPtr constant_matrix_field(Mat values);
MatrixFieldPtr expression_matrix_field(std::vector<std::vector<Expression>> entries);
/// J_ij = epsilon_ijk x_k on R^3.
MatrixFieldPtr so3_matrix_field();

/// Rank-3 array of entry partials, indexed (l, j, k) = d_l M_jk.
class Rank3 {
public:
    explicit Rank3(int m) : m_(m), a_(static_cast<std::size_t>(m) * m * m, 0.0) {}

    int size() const noexcept { return m_; }
    double& operator()(int l, int j, int k) {
        return a_[(static_cast<std::size_t>(l) * m_ + j) * m_ + k];
    }
    double operator()(int l, int j, int k) const {
        return a_[(static_cast<std::size_t>(l) * m_ + j) * m_ + k];
    }

private:
    int m_;
    std::vector<double> a_;
};

/// All m^3 entry partials d_l M_jk via one dual sweep per direction.
Rank3 matrix_partials(const MatrixField& field, std::span<const double> x);

/// Skew-symmetric structure matrix J(x). Builders record provenance; grids
/// supplied as expressions are checked numerically, never assumed skew.
class StructureMatrix {
public:
    enum class Builder { Canonical, Constant, So3, ExpressionGrid };

    /// Canonical 2n x 2n block matrix: J[a, n+a] = 1, J[n+a, a] = -1.
    static StructureMatrix canonical(int n);
    /// Constant matrix; rejects non-skew input.
    static StructureMatrix constant(Mat values);
    static StructureMatrix so3();
    /// m x m grid of expressions over shared coordinates.
    static StructureMatrix from_expressions(std::vector<std::vector<Expression>> entries);

    int dimension() const noexcept { return field_->dimension(); }
    Builder builder() const noexcept { return builder_; }
    const MatrixField& field() const noexcept { return *field_; }

    template <typename T>
    SquareMatrix<T> eval(std::span<const T> x) const {
        return field_->eval(x);
    }

    /// max |J_kl + J_lk| over entries at x (includes the diagonal).
    double skew_residual_at(std::span<const double> x) const;

private:
    StructureMatrix(MatrixFieldPtr field, Builder builder)
        : field_(std::move(field)), builder_(builder) {}

    MatrixFieldPtr field_;
    Builder builder_;
};

} // namespace covham
