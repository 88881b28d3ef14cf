#pragma once

/**
    \file
    \brief type-erased fields evaluable on every supported jet depth

    A field is written once as a generic lambda. Wrapping it instantiates the lambda for double and for jets of depth
    1 through 4, and keeps one std::function per scalar kind, so differentiation code can ask for the field at
    whatever depth it needs at runtime.
*/

#include <dflat/errors.hpp>
#include <dflat/jet.hpp>
#include <dflat/linalg.hpp>

#include <functional>
#include <memory>
#include <span>
#include <tuple>
#include <utility>

namespace dflat {

template <class T>
using ScalarSig = T(std::span<T const>, std::span<T const>);
template <class T>
using PotentialSig = T(std::span<T const>);
template <class T>
using MatrixSig = Mat<T>(std::span<T const>);
template <class T>
using VectorSig = Vec<T>(std::span<T const>);
template <class T>
using UnarySig = T(T const&);

/// One std::function per scalar kind (double, J1..J4), shared and immutable.
template <template <class> class Sig>
class MultiFn
{
public:
    MultiFn() = default;

    template <class G>
    static MultiFn from(G const& g)
    {
        MultiFn m;
        m.fns_ = std::make_shared<Table const>(Table{std::function<Sig<double>>(g), std::function<Sig<J1>>(g),
                                                      std::function<Sig<J2>>(g), std::function<Sig<J3>>(g),
                                                      std::function<Sig<J4>>(g)});
        return m;
    }

    explicit operator bool() const noexcept { return static_cast<bool>(fns_); }

    template <Scalar T, class... Args>
    decltype(auto) call(Args&&... args) const
    {
        return std::get<std::function<Sig<T>>>(*fns_)(std::forward<Args>(args)...);
    }

private:
    using Table = std::tuple<std::function<Sig<double>>, std::function<Sig<J1>>, std::function<Sig<J2>>,
                             std::function<Sig<J3>>, std::function<Sig<J4>>>;
    std::shared_ptr<Table const> fns_;
};

/// Thrown from inside generic lambdas when a depth cannot be served.
[[noreturn]] void throw_depth_exceeded(char const* what);

/// Real-valued function of (x, y) on the tangent bundle of an open subset of R^n.
class ScalarField
{
public:
    ScalarField() = default;

    template <class G>
    static ScalarField from(int dim, G const& g)
    {
        ScalarField f;
        f.dim_ = dim;
        f.fn_ = MultiFn<ScalarSig>::from(g);
        return f;
    }

    int dim() const noexcept { return dim_; }

    template <Scalar T>
    T operator()(std::span<T const> x, std::span<T const> y) const
    {
        return fn_.template call<T>(x, y);
    }

    template <Scalar T>
    T operator()(Vec<T> const& x, Vec<T> const& y) const
    {
        return (*this)(std::span<T const>(x), std::span<T const>(y));
    }

    /// f * f, as a new field.
    ScalarField squared() const;

private:
    int dim_ = 0;
    MultiFn<ScalarSig> fn_;
};

/// Real-valued function of x alone.
class PotentialField
{
public:
    PotentialField() = default;

    template <class G>
    static PotentialField from(int dim, G const& g)
    {
        PotentialField f;
        f.dim_ = dim;
        f.fn_ = MultiFn<PotentialSig>::from(g);
        return f;
    }

    int dim() const noexcept { return dim_; }

    template <Scalar T>
    T operator()(std::span<T const> x) const
    {
        return fn_.template call<T>(x);
    }

private:
    int dim_ = 0;
    MultiFn<PotentialSig> fn_;
};

/// x -> symmetric positive definite a_ij(x).
class MetricField
{
public:
    MetricField() = default;

    template <class G>
    static MetricField from(int dim, G const& g)
    {
        MetricField f;
        f.dim_ = dim;
        f.fn_ = MultiFn<MatrixSig>::from(g);
        return f;
    }

    int dim() const noexcept { return dim_; }

    template <Scalar T>
    Mat<T> operator()(std::span<T const> x) const
    {
        return fn_.template call<T>(x);
    }

    template <Scalar T>
    Mat<T> operator()(Vec<T> const& x) const
    {
        return (*this)(std::span<T const>(x));
    }

    /// Length field sqrt(a_ij y^i y^j).
    ScalarField norm() const;

    static MetricField euclidean(int dim);

private:
    int dim_ = 0;
    MultiFn<MatrixSig> fn_;
};

template <class Tag>
class CoordinateField
{
public:
    CoordinateField() = default;

    template <class G>
    static CoordinateField from(int dim, G const& g)
    {
        CoordinateField f;
        f.dim_ = dim;
        f.fn_ = MultiFn<VectorSig>::from(g);
        return f;
    }

    static CoordinateField zero(int dim)
    {
        return from(dim, [dim]<class T>(std::span<T const>) { return Vec<T>(static_cast<std::size_t>(dim), T(0.0)); });
    }

    int dim() const noexcept { return dim_; }

    template <Scalar T>
    Vec<T> operator()(std::span<T const> x) const
    {
        return fn_.template call<T>(x);
    }

    template <Scalar T>
    Vec<T> operator()(Vec<T> const& x) const
    {
        return (*this)(std::span<T const>(x));
    }

private:
    int dim_ = 0;
    MultiFn<VectorSig> fn_;
};

struct OneFormTag;
struct VectorTag;

/// Covector field b_i(x).
using OneFormField = CoordinateField<OneFormTag>;
/// Vector field W^i(x).
using VectorField = CoordinateField<VectorTag>;

/// Linear field b_i(x) y^i.
ScalarField linear_form(OneFormField const& b);

/// Function of one real variable, evaluable on jets.
class UnaryFn
{
public:
    UnaryFn() = default;

    template <class G>
    static UnaryFn from(G const& g)
    {
        UnaryFn f;
        f.fn_ = MultiFn<UnarySig>::from(g);
        return f;
    }

    static UnaryFn constant(double c);

    template <Scalar T>
    T operator()(T const& t) const
    {
        return fn_.template call<T>(t);
    }

private:
    MultiFn<UnarySig> fn_;
};

/// Squared norm b^2 = a^{ij} b_i b_j of a one-form against a metric.
template <Scalar T>
T squared_norm(Mat<T> const& a, Vec<T> const& b)
{
    return quadratic(inverse(a), b);
}

}  // namespace dflat
