#include "sosgap/gaussian_rational.hpp"

#include "sosgap/error.hpp"

#include <cctype>
#include <sstream>

namespace sosgap {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("malformed rational '" + std::string(text) + "'");

    mpz_class p(std::string(num), 10);
    mpz_class q(std::string(den), 10);
    if (q == 0) throw ParseError("zero denominator in rational '" + std::string(text) + "'");
    if (text.front() == '-') p = -p;
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    const Rational d = o.norm();
    if (sgn(d) == 0) throw std::domain_error("division by zero Gaussian rational");
    Rational re = (re_ * o.re_ + im_ * o.im_) / d;
    Rational im = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string to_string(const GaussianRational& z)
{
    if (z.is_real()) return to_string(z.re());
    std::ostringstream os;
    if (sgn(z.re()) != 0) {
        os << to_string(z.re());
        if (sgn(z.im()) > 0) os << '+';
    }
    if (z.im() == 1)
        os << "i";
    else if (z.im() == -1)
        os << "-i";
    else
        os << to_string(z.im()) << 'i';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z)
{
    return os << to_string(z);
}

} // namespace sosgap
