#pragma once

/**
    \file
    \brief nestable forward-mode jets

    A jet carries a value and one directional derivative. Nesting jet_t inside itself gives one extra derivative
    direction per level, so Jet<Jet<double>> evaluates a mixed second partial exactly, and so on up to depth 4.
*/

#include <cmath>
#include <concepts>
#include <type_traits>

namespace dflat {

template <class T>
struct Jet;

template <class S>
struct jet_depth : std::integral_constant<int, 0>
{};

template <class T>
struct jet_depth<Jet<T>> : std::integral_constant<int, 1 + jet_depth<T>::value>
{};

template <class S>
inline constexpr int jet_depth_v = jet_depth<S>::value;

template <class S>
concept Scalar = std::same_as<S, double> || (jet_depth<S>::value > 0);

template <class T>
struct Jet
{
    using inner_type = T;

    T f{};   // value
    T df{};  // derivative along this level's direction

    constexpr Jet() = default;
    constexpr Jet(double value) : f(value), df(0.0) {}
    constexpr Jet(T value) requires(!std::same_as<T, double>) : f(value), df(0.0) {}
    constexpr Jet(T value, T derivative) : f(value), df(derivative) {}

    constexpr Jet& operator+=(Jet const& o)
    {
        f += o.f;
        df += o.df;
        return *this;
    }
    constexpr Jet& operator-=(Jet const& o)
    {
        f -= o.f;
        df -= o.df;
        return *this;
    }
    constexpr Jet& operator*=(Jet const& o) { return *this = *this * o; }
    constexpr Jet& operator/=(Jet const& o) { return *this = *this / o; }

    friend constexpr Jet operator-(Jet const& a) { return {-a.f, -a.df}; }
    friend constexpr Jet operator+(Jet const& a) { return a; }

    friend constexpr Jet operator+(Jet const& a, Jet const& b) { return {a.f + b.f, a.df + b.df}; }
    friend constexpr Jet operator-(Jet const& a, Jet const& b) { return {a.f - b.f, a.df - b.df}; }
    friend constexpr Jet operator*(Jet const& a, Jet const& b) { return {a.f * b.f, a.f * b.df + a.df * b.f}; }
    friend constexpr Jet operator/(Jet const& a, Jet const& b)
    {
        T const q = a.f / b.f;
        return {q, (a.df - q * b.df) / b.f};
    }

    // scalar fast paths; exact matches win over the converting overloads above
    friend constexpr Jet operator+(Jet const& a, double b) { return {a.f + b, a.df}; }
    friend constexpr Jet operator+(double a, Jet const& b) { return {a + b.f, b.df}; }
    friend constexpr Jet operator-(Jet const& a, double b) { return {a.f - b, a.df}; }
    friend constexpr Jet operator-(double a, Jet const& b) { return {a - b.f, -b.df}; }
    friend constexpr Jet operator*(Jet const& a, double b) { return {a.f * b, a.df * b}; }
    friend constexpr Jet operator*(double a, Jet const& b) { return {a * b.f, a * b.df}; }
    friend constexpr Jet operator/(Jet const& a, double b) { return {a.f / b, a.df / b}; }

    friend Jet sqrt(Jet const& a)
    {
        using std::sqrt;
        T const s = sqrt(a.f);
        return {s, a.df / (2.0 * s)};
    }
    friend Jet exp(Jet const& a)
    {
        using std::exp;
        T const e = exp(a.f);
        return {e, e * a.df};
    }
    friend Jet log(Jet const& a)
    {
        using std::log;
        return {log(a.f), a.df / a.f};
    }
    friend Jet pow(Jet const& a, double p)
    {
        using std::pow;
        return {pow(a.f, p), p * pow(a.f, p - 1.0) * a.df};
    }
    friend Jet sin(Jet const& a)
    {
        using std::cos;
        using std::sin;
        return {sin(a.f), cos(a.f) * a.df};
    }
    friend Jet cos(Jet const& a)
    {
        using std::cos;
        using std::sin;
        return {cos(a.f), -sin(a.f) * a.df};
    }
};

using J1 = Jet<double>;
using J2 = Jet<J1>;
using J3 = Jet<J2>;
using J4 = Jet<J3>;

inline constexpr int max_jet_depth = 4;

namespace detail {
template <int K>
struct jet_of
{
    using type = Jet<typename jet_of<K - 1>::type>;
};
template <>
struct jet_of<0>
{
    using type = double;
};
}  // namespace detail

template <int K>
using JetOf = typename detail::jet_of<K>::type;

/// Primal value at the bottom of a jet tower.
template <Scalar S>
constexpr double value_of(S const& s)
{
    if constexpr (std::same_as<S, double>)
        return s;
    else
        return value_of(s.f);
}

/// Coefficient of the product of every level's infinitesimal (the full mixed partial).
template <Scalar S>
constexpr double top_derivative(S const& s)
{
    if constexpr (std::same_as<S, double>)
        return s;
    else
        return top_derivative(s.df);
}

/// True when every component of the tower is finite.
template <Scalar S>
bool all_finite(S const& s)
{
    if constexpr (std::same_as<S, double>)
        return std::isfinite(s);
    else
        return all_finite(s.f) && all_finite(s.df);
}

/**
    Builds a depth-K jet for an independent variable with primal value v. Bit l of mask (bit 0 = outermost level)
    marks that the variable moves with level l's infinitesimal.
*/
template <Scalar S>
constexpr S seeded(double v, unsigned mask)
{
    if constexpr (std::same_as<S, double>)
        return v;
    else {
        using I = typename S::inner_type;
        return S(seeded<I>(v, mask >> 1u), (mask & 1u) ? I(1.0) : I(0.0));
    }
}

/// Wraps an existing scalar in one more level, with the given tangent.
template <Scalar T>
constexpr Jet<T> lift(T const& v, T const& tangent)
{
    return Jet<T>(v, tangent);
}

template <Scalar T>
constexpr Jet<T> lift(T const& v)
{
    return Jet<T>(v, T(0.0));
}

}  // namespace dflat
