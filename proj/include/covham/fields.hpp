#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "covham/dual.hpp"
#include "covham/expression.hpp"
#include "covham/linalg.hpp"

namespace covham {

enum class FieldKind { Parsed, BuiltIn, Composed };

/// Smooth scalar function of the state with exact derivative access.
///
/// The three eval overloads give dual evaluation to depth two, which is what
/// exact gradients of first-derivative quantities (brackets, flow fields)
/// require. Fields are immutable after construction and evaluation is pure, so
/// concurrent use is safe.
class ScalarField {
public:
    virtual ~ScalarField() = default;

    virtual int dimension() const noexcept = 0;
    virtual FieldKind kind() const noexcept = 0;

    virtual double eval(std::span<const double> x) const = 0;
    virtual Dual1 eval(std::span<const Dual1> x) const = 0;
    virtual Dual2 eval(std::span<const Dual2> x) const = 0;
};

using FieldPtr = std::shared_ptr<const ScalarField>;

/// Exact gradient by seeding one dual direction per coordinate. Usable at
/// T = double and T = Dual1 (the latter nests to depth two).
template <typename T>
std::vector<T> field_gradient(const ScalarField& f, std::span<const T> x) {
    static_assert(dual_depth_v<T> <= 1, "gradient nesting is limited to depth two");
    const int m = static_cast<int>(x.size());
    std::vector<Dual<T>> xd(x.begin(), x.end());
    std::vector<T> grad(static_cast<std::size_t>(m), scalar_of<T>(0.0));
    for (int k = 0; k < m; ++k) {
        xd[static_cast<std::size_t>(k)].d = scalar_of<T>(1.0);
        grad[static_cast<std::size_t>(k)] = f.eval(std::span<const Dual<T>>(xd)).d;
        xd[static_cast<std::size_t>(k)].d = scalar_of<T>(0.0);
    }
    return grad;
}

inline std::vector<double> gradient(const ScalarField& f, std::span<const double> x) {
    return field_gradient<double>(f, x);
}

/// All m^2 second derivatives via nested duals.
Mat hessian(const ScalarField& f, std::span<const double> x);

/// Central-difference gradient, (f(x+h e_i) - f(x-h e_i)) / 2h. Independent
/// oracle for the dual-number path; domain violations at probe points
/// propagate as DomainError.
std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x, double h);

namespace detail {

template <typename F>
class CallableField final : public ScalarField {
public:
    CallableField(int dim, FieldKind kind, F fn) : dim_(dim), kind_(kind), fn_(std::move(fn)) {}

    int dimension() const noexcept override { return dim_; }
    FieldKind kind() const noexcept override { return kind_; }

    double eval(std::span<const double> x) const override { return fn_(x); }
    Dual1 eval(std::span<const Dual1> x) const override { return fn_(x); }
    Dual2 eval(std::span<const Dual2> x) const override { return fn_(x); }

private:
    int dim_;
    FieldKind kind_;
    F fn_;
};

} // namespace detail

/// Wrap a generic callable `fn(span<const T>) -> T` as a field.
template <typename F>
FieldPtr make_field(int dim, F fn, FieldKind kind = FieldKind::BuiltIn) {
    return std::make_shared<detail::CallableField<F>>(dim, kind, std::move(fn));
}

/// Field backed by a parsed expression.
FieldPtr expression_field(Expression expr);

FieldPtr constant_field(int dim, double value);
FieldPtr coordinate_field(int dim, int index);
FieldPtr product_field(FieldPtr a, FieldPtr b);
FieldPtr linear_combination_field(double ca, FieldPtr a, double cb, FieldPtr b);

/// Multivariate polynomial with explicit monomials; exact under duals at any
/// depth. The random family (total degree <= 3, coefficients in [-1,1]) drives
/// the property suites.
class PolynomialField final : public ScalarField {
public:
    struct Monomial {
        double coefficient;
        std::vector<int> exponents; // one per coordinate
    };

    PolynomialField(int dim, std::vector<Monomial> monomials);

    int dimension() const noexcept override { return dim_; }
    FieldKind kind() const noexcept override { return FieldKind::BuiltIn; }

    double eval(std::span<const double> x) const override { return eval_t(x); }
    Dual1 eval(std::span<const Dual1> x) const override { return eval_t(x); }
    Dual2 eval(std::span<const Dual2> x) const override { return eval_t(x); }

private:
    template <typename T>
    T eval_t(std::span<const T> x) const {
        T sum = scalar_of<T>(0.0);
        for (const Monomial& mono : monomials_) {
            T term = scalar_of<T>(mono.coefficient);
            for (int i = 0; i < dim_; ++i) {
                for (int e = 0; e < mono.exponents[static_cast<std::size_t>(i)]; ++e)
                    term = term * x[static_cast<std::size_t>(i)];
            }
            sum = sum + term;
        }
        return sum;
    }

    int dim_;
    std::vector<Monomial> monomials_;
};

/// Deterministic random polynomial of total degree <= max_degree with
/// coefficients in [-1,1] drawn from the given 64-bit state.
FieldPtr random_polynomial(int dim, int max_degree, std::uint64_t& state);

/// xorshift-style deterministic uniform double in [0,1); shared by every
/// seeded sampler so reports are reproducible across platforms.
double next_uniform(std::uint64_t& state);

} // namespace covham
