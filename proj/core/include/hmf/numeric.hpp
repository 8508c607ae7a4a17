#pragma once

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <utility>

namespace hmf
{

    // Arbitrary-precision real with runtime-selected precision.  All analytic
    // code in the library goes through this type; ring arithmetic never does.
    using Real = boost::multiprecision::number<
        boost::multiprecision::mpfr_float_backend<0>,
        boost::multiprecision::et_off>;

    // Working precision for newly constructed Real values, in bits.
    void set_precision_bits(unsigned bits);
    unsigned precision_bits();

    Real pi_value();

    Real to_real(const mpz_class &z);
    Real to_real(const mpq_class &q);

    /**
     * Minimal complex type over Real.  std::complex is not specified for
     * user-defined floating types, and the library only needs a handful of
     * operations (field ops, exp, log, integer powers, abs).
     */
    struct Cplx
    {
        Real re, im;

        Cplx() : re(0), im(0) {}
        Cplx(Real r) : re(std::move(r)), im(0) {}
        Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
        Cplx(double r) : re(r), im(0) {}
        Cplx(double r, double i) : re(r), im(i) {}

        Cplx operator+(const Cplx &o) const { return {re + o.re, im + o.im}; }
        Cplx operator-(const Cplx &o) const { return {re - o.re, im - o.im}; }
        Cplx operator-() const { return {-re, -im}; }
        Cplx operator*(const Cplx &o) const
        {
            return {re * o.re - im * o.im, re * o.im + im * o.re};
        }
        Cplx operator*(const Real &s) const { return {re * s, im * s}; }
        Cplx &operator+=(const Cplx &o)
        {
            re += o.re;
            im += o.im;
            return *this;
        }
        Cplx &operator-=(const Cplx &o)
        {
            re -= o.re;
            im -= o.im;
            return *this;
        }
        Cplx &operator*=(const Cplx &o)
        {
            *this = *this * o;
            return *this;
        }

        Cplx conj() const { return {re, -im}; }
        Real norm2() const { return re * re + im * im; }
        Real abs() const { return sqrt(norm2()); }

        Cplx inv() const
        {
            Real n = norm2();
            return {re / n, -im / n};
        }
        Cplx operator/(const Cplx &o) const { return *this * o.inv(); }
        Cplx operator/(const Real &s) const { return {re / s, im / s}; }

        bool is_zero() const { return re == 0 && im == 0; }
        bool operator==(const Cplx &o) const { return re == o.re && im == o.im; }
        bool operator!=(const Cplx &o) const { return !(*this == o); }
    };

    Cplx cexp(const Cplx &z);
    // exp(2*pi*i * x) for real x
    Cplx unit_phase(const Real &x);
    // Principal branch.
    Cplx clog(const Cplx &z);
    // z^n for integer n (binary powering; n may be negative).
    Cplx cpow_int(const Cplx &z, long n);
    // x^e for x > 0 real, e rational (positive real root).
    Real rpow(const Real &x, const mpq_class &e);

    std::string to_string(const Cplx &z, unsigned digits = 20);

} // namespace hmf
