#include <dflat/field.hpp>

#include <string>

namespace dflat {

void throw_depth_exceeded(char const* what)
{
    throw UnsupportedOrderError(std::string(what) + ": requested jet depth exceeds what this field can serve");
}

ScalarField ScalarField::squared() const
{
    ScalarField self = *this;
    return from(dim_, [self]<class T>(std::span<T const> x, std::span<T const> y) {
        T const v = self(x, y);
        return v * v;
    });
}

ScalarField MetricField::norm() const
{
    MetricField self = *this;
    return ScalarField::from(dim_, [self]<class T>(std::span<T const> x, std::span<T const> y) {
        using std::sqrt;
        return sqrt(quadratic(self(x), y, y));
    });
}

MetricField MetricField::euclidean(int dim)
{
    return from(dim, [dim]<class T>(std::span<T const>) { return Mat<T>::identity(dim); });
}

ScalarField linear_form(OneFormField const& b)
{
    return ScalarField::from(b.dim(), [b]<class T>(std::span<T const> x, std::span<T const> y) {
        Vec<T> const bx = b(x);
        return dot(std::span<T const>(bx), y);
    });
}

UnaryFn UnaryFn::constant(double c)
{
    return from([c]<class T>(T const&) { return T(c); });
}

}  // namespace dflat
