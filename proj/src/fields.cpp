#include "covham/fields.hpp"

#include <cmath>
#include <utility>

namespace covham {

Mat hessian(const ScalarField& f, std::span<const double> x) {
    const int m = static_cast<int>(x.size());
    Mat h(m);
    std::vector<Dual2> xd(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        xd[static_cast<std::size_t>(k)] = scalar_of<Dual2>(x[static_cast<std::size_t>(k)]);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            xd[static_cast<std::size_t>(i)].v.d = 1.0;
            xd[static_cast<std::size_t>(j)].d.v = 1.0;
            h(i, j) = f.eval(std::span<const Dual2>(xd)).d.d;
            xd[static_cast<std::size_t>(i)].v.d = 0.0;
            xd[static_cast<std::size_t>(j)].d.v = 0.0;
        }
    }
    return h;
}

std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x, double h) {
    if (!(h > 0.0))
        throw ValidationError("finite-difference step must be > 0");
    const int m = static_cast<int>(x.size());
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> grad(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double xk = probe[static_cast<std::size_t>(k)];
        probe[static_cast<std::size_t>(k)] = xk + h;
        const double fp = f.eval(std::span<const double>(probe));
        probe[static_cast<std::size_t>(k)] = xk - h;
        const double fm = f.eval(std::span<const double>(probe));
        probe[static_cast<std::size_t>(k)] = xk;
        grad[static_cast<std::size_t>(k)] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

namespace {

class ExpressionScalarField final : public ScalarField {
public:
    explicit ExpressionScalarField(Expression expr) : expr_(std::move(expr)) {}

    int dimension() const noexcept override { return expr_.dimension(); }
    FieldKind kind() const noexcept override { return FieldKind::Parsed; }

    double eval(std::span<const double> x) const override { return expr_.eval(x); }
    Dual1 eval(std::span<const Dual1> x) const override { return expr_.eval(x); }
    Dual2 eval(std::span<const Dual2> x) const override { return expr_.eval(x); }

private:
    Expression expr_;
};

} // namespace

FieldPtr expression_field(Expression expr) {
    return std::make_shared<ExpressionScalarField>(std::move(expr));
}

FieldPtr constant_field(int dim, double value) {
    return make_field(dim, [value](auto x) {
        using T = typename decltype(x)::value_type;
        (void)x;
        return scalar_of<T>(value);
    });
}

FieldPtr coordinate_field(int dim, int index) {
    return make_field(dim, [index](auto x) { return x[static_cast<std::size_t>(index)]; });
}

FieldPtr product_field(FieldPtr a, FieldPtr b) {
    return make_field(
        a->dimension(), [a, b](auto x) { return a->eval(x) * b->eval(x); }, FieldKind::Composed);
}

FieldPtr linear_combination_field(double ca, FieldPtr a, double cb, FieldPtr b) {
    return make_field(
        a->dimension(), [ca, a, cb, b](auto x) { return ca * a->eval(x) + cb * b->eval(x); },
        FieldKind::Composed);
}

PolynomialField::PolynomialField(int dim, std::vector<Monomial> monomials)
    : dim_(dim), monomials_(std::move(monomials)) {}

double next_uniform(std::uint64_t& state) {
    // splitmix64 step; top 53 bits become the mantissa.
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

FieldPtr random_polynomial(int dim, int max_degree, std::uint64_t& state) {
    std::vector<PolynomialField::Monomial> monomials;
    std::vector<int> exps(static_cast<std::size_t>(dim), 0);
    // Enumerate all exponent tuples with total degree <= max_degree.
    auto recurse = [&](auto&& self, int coord, int remaining) -> void {
        if (coord == dim) {
            double c = 2.0 * next_uniform(state) - 1.0;
            monomials.push_back({c, exps});
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            exps[static_cast<std::size_t>(coord)] = e;
            self(self, coord + 1, remaining - e);
        }
        exps[static_cast<std::size_t>(coord)] = 0;
    };
    recurse(recurse, 0, max_degree);
    return std::make_shared<PolynomialField>(dim, std::move(monomials));
}

} // namespace covham
