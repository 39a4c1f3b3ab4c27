#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace sosgap {

using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading '-', no decimals, q > 0).
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Exact complex number with rational real and imaginary parts.
/// Both parts are kept in lowest terms with positive denominators.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}
    GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |x|^2
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

private:
    Rational re_{0};
    Rational im_{0};
};

/// "a", "a+bi", "bi", "-a-bi" with rational a, b.
std::string to_string(const GaussianRational& z);

} // namespace sosgap
