#include "stackmst/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace stackmst {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign)
{
    if (allow_sign && !s.empty() && s.front() == '-')
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");

    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Rational make_rational(long num, long den)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value)
{
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value)
{
    return value.get_d();
}

Rational from_double(double value)
{
    if (!std::isfinite(value))
        throw std::invalid_argument("cannot convert a non-finite double to a rational");
    return Rational(value);
}

} // namespace stackmst
