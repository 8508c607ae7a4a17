#include "hmf/numeric.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hmf
{

    namespace
    {
        unsigned g_bits = 128;
    }

    void set_precision_bits(unsigned bits)
    {
        if (bits < 24 || bits > 1u << 20)
            throw std::invalid_argument("set_precision_bits: bits out of range");
        g_bits = bits;
        // boost mpfr backend counts decimal digits
        unsigned digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566)) + 2;
        Real::default_precision(digits10);
    }

    unsigned precision_bits() { return g_bits; }

    Real pi_value()
    {
        // mpfr computes acos at the current default precision
        return acos(Real(-1));
    }

    Real to_real(const mpz_class &z)
    {
        return Real(z.get_mpz_t());
    }

    Real to_real(const mpq_class &q)
    {
        return Real(q.get_mpq_t());
    }

    Cplx cexp(const Cplx &z)
    {
        Real m = exp(z.re);
        return {m * cos(z.im), m * sin(z.im)};
    }

    Cplx unit_phase(const Real &x)
    {
        Real t = 2 * pi_value() * x;
        return {cos(t), sin(t)};
    }

    Cplx clog(const Cplx &z)
    {
        if (z.is_zero())
            throw std::domain_error("clog: log of zero");
        return {log(z.norm2()) / 2, atan2(z.im, z.re)};
    }

    Cplx cpow_int(const Cplx &z, long n)
    {
        if (n < 0)
            return cpow_int(z.inv(), -n);
        Cplx acc(Real(1));
        Cplx base = z;
        unsigned long e = static_cast<unsigned long>(n);
        while (e)
        {
            if (e & 1)
                acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    Real rpow(const Real &x, const mpq_class &e)
    {
        if (x <= 0)
            throw std::domain_error("rpow: base must be positive");
        if (e == 0)
            return Real(1);
        if (e.get_den() == 1 && e.get_num().fits_slong_p())
        {
            long n = e.get_num().get_si();
            Real acc(1), base = (n > 0) ? x : 1 / x;
            unsigned long k = static_cast<unsigned long>(n > 0 ? n : -n);
            while (k)
            {
                if (k & 1)
                    acc *= base;
                base *= base;
                k >>= 1;
            }
            return acc;
        }
        return exp(to_real(e) * log(x));
    }

    std::string to_string(const Cplx &z, unsigned digits)
    {
        std::ostringstream os;
        os.precision(digits);
        os << z.re;
        if (z.im >= 0)
            os << "+" << z.im << "i";
        else
            os << z.im << "i";
        return os.str();
    }

} // namespace hmf
