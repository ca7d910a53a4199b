#pragma once

#include <cmath>
#include <type_traits>

#include "covham/errors.hpp"

namespace covham {

/// Forward-mode dual number: carries a value and the derivative along one
/// seeded direction. Nesting (Dual<Dual<double>>) yields exact second
/// derivatives.
template <typename T>
struct Dual {
    T v{}; // value
    T d{}; // derivative

    constexpr Dual() = default;
    constexpr Dual(T value) : v(std::move(value)) {}
    constexpr Dual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual<double>>;

template <typename T>
struct dual_depth : std::integral_constant<int, 0> {};
template <typename T>
struct dual_depth<Dual<T>> : std::integral_constant<int, 1 + dual_depth<T>::value> {};
template <typename T>
inline constexpr int dual_depth_v = dual_depth<std::remove_cvref_t<T>>::value;

/// Value part all the way down to the underlying double.
inline double primal(double x) { return x; }
template <typename T>
double primal(const Dual<T>& x) { return primal(x.v); }

template <typename T>
struct scalar_maker {
    static T make(double c) { return c; }
};
template <typename U>
struct scalar_maker<Dual<U>> {
    static Dual<U> make(double c) { return Dual<U>(scalar_maker<U>::make(c)); }
};

/// Constant of the requested scalar depth (zero derivative parts).
template <typename T>
T scalar_of(double c) { return scalar_maker<T>::make(c); }

template <typename T>
constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
    return {a.v + b.v, a.d + b.d};
}
template <typename T>
constexpr Dual<T> operator+(const Dual<T>& a, double b) { return {a.v + b, a.d}; }
template <typename T>
constexpr Dual<T> operator+(double a, const Dual<T>& b) { return {a + b.v, b.d}; }

template <typename T>
constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <typename T>
constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
    return {a.v - b.v, a.d - b.d};
}
template <typename T>
constexpr Dual<T> operator-(const Dual<T>& a, double b) { return {a.v - b, a.d}; }
template <typename T>
constexpr Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }

template <typename T>
constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <typename T>
constexpr Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <typename T>
constexpr Dual<T> operator*(double a, const Dual<T>& b) { return {a * b.v, a * b.d}; }

template <typename T>
constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
template <typename T>
constexpr Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <typename T>
constexpr Dual<T> operator/(double a, const Dual<T>& b) {
    return {a / b.v, -(a / (b.v * b.v)) * b.d};
}

template <typename T>
Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) {
    a.v = a.v + b.v;
    a.d = a.d + b.d;
    return a;
}
template <typename T>
Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) {
    a.v = a.v - b.v;
    a.d = a.d - b.d;
    return a;
}

using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;

template <typename T>
Dual<T> sin(const Dual<T>& x) { return {sin(x.v), x.d * cos(x.v)}; }
template <typename T>
Dual<T> cos(const Dual<T>& x) { return {cos(x.v), -(x.d * sin(x.v))}; }
template <typename T>
Dual<T> exp(const Dual<T>& x) {
    T e = exp(x.v);
    return {e, x.d * e};
}
template <typename T>
Dual<T> log(const Dual<T>& x) { return {log(x.v), x.d / x.v}; }
template <typename T>
Dual<T> sqrt(const Dual<T>& x) {
    T r = sqrt(x.v);
    return {r, x.d / (2.0 * r)};
}

/// Domain-checked elementary operations used by expression evaluation and the
/// field machinery. Checks inspect the primal value, so the same guard covers
/// every dual depth.
namespace checked {

template <typename T>
T div(const T& a, const T& b) {
    if (primal(b) == 0.0)
        throw DomainError("division by zero");
    return a / b;
}

template <typename T>
T log(const T& x) {
    if (primal(x) <= 0.0)
        throw DomainError("log of non-positive value");
    using covham::log;
    using std::log;
    return log(x);
}

template <typename T>
T sqrt(const T& x) {
    double p = primal(x);
    if (p < 0.0)
        throw DomainError("sqrt of negative value");
    if (p == 0.0 && dual_depth_v<T> > 0)
        throw DomainError("sqrt derivative at zero");
    using covham::sqrt;
    using std::sqrt;
    return sqrt(x);
}

/// Integer power by repeated multiplication; exact for dual arithmetic.
template <typename T>
T pow_int(const T& base, long long n) {
    if (n < 0) {
        if (primal(base) == 0.0)
            throw DomainError("zero raised to a negative power");
        return div(scalar_maker<T>::make(1.0), pow_int(base, -n));
    }
    T acc = scalar_maker<T>::make(1.0);
    T b = base;
    while (n > 0) {
        if (n & 1)
            acc = acc * b;
        b = b * b;
        n >>= 1;
    }
    return acc;
}

/// General power: requires a positive base.
template <typename T>
T pow_general(const T& base, const T& exponent) {
    if (primal(base) <= 0.0)
        throw DomainError("non-integer power requires positive base");
    using covham::exp;
    using covham::log;
    using std::exp;
    using std::log;
    return exp(exponent * log(base));
}

} // namespace checked

} // namespace covham
