#include <dflat/errors.hpp>

#include <sstream>

namespace dflat {

std::string format_point(std::vector<double> const& v)
{
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i];
    os << ')';
    return os.str();
}

EvaluationError::EvaluationError(std::string const& what, std::vector<double> x, std::vector<double> y)
    : Error(what + " at x=" + format_point(x) + " y=" + format_point(y)), x_(std::move(x)), y_(std::move(y))
{}

}  // namespace dflat
