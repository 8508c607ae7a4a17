#include "hmf/quadfield.hpp"

#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hmf
{

    struct Field::Ctx
    {
        long d = 0;
        long disc = 0;
        bool half = false;
        long unit_box = 10000;

        std::once_flag unit_once;
        std::optional<FieldElement> unit;
        std::exception_ptr unit_error;
    };

    namespace
    {
        bool square_free(long d)
        {
            for (long p = 2; p * p <= d; ++p)
                if (d % (p * p) == 0)
                    return false;
            return true;
        }
    } // namespace

    Field Field::make(long d, long unit_search_bound)
    {
        if (d <= 1)
            throw std::invalid_argument("Field::make: D must be > 1");
        if (!square_free(d))
            throw std::invalid_argument("Field::make: D must be square-free");
        auto ctx = std::make_shared<Ctx>();
        ctx->d = d;
        ctx->half = (d % 4 == 1);
        ctx->disc = ctx->half ? d : 4 * d;
        ctx->unit_box = unit_search_bound;
        return Field(std::move(ctx));
    }

    long Field::d() const { return ctx_->d; }
    long Field::disc() const { return ctx_->disc; }
    bool Field::omega_is_half() const { return ctx_->half; }
    long Field::omega_trace() const { return ctx_->half ? 1 : 0; }
    long Field::omega_norm() const
    {
        return ctx_->half ? (1 - ctx_->d) / 4 : -ctx_->d;
    }

    FieldElement Field::element(const mpq_class &a, const mpq_class &b) const
    {
        return FieldElement(*this, a, b);
    }
    FieldElement Field::from_integers(long a, long b) const
    {
        return FieldElement(*this, mpq_class(a), mpq_class(b));
    }
    FieldElement Field::zero() const { return from_integers(0, 0); }
    FieldElement Field::one() const { return from_integers(1, 0); }
    FieldElement Field::omega() const { return from_integers(0, 1); }
    FieldElement Field::sqrt_d() const
    {
        return omega_is_half() ? from_integers(-1, 2) : from_integers(0, 1);
    }

    bool Field::operator==(const Field &o) const
    {
        if (!ctx_ || !o.ctx_)
            return ctx_ == o.ctx_;
        return ctx_->d == o.ctx_->d;
    }

    std::string Field::to_string() const
    {
        std::ostringstream os;
        os << "Q(sqrt " << ctx_->d << ")";
        return os.str();
    }

    Field Field::parse(const std::string &s)
    {
        // accepted: "Q(sqrt D)" with optional spaces
        std::string t;
        for (char c : s)
            if (!isspace(static_cast<unsigned char>(c)))
                t += c;
        if (t.rfind("Q(sqrt", 0) != 0 || t.back() != ')')
            throw std::invalid_argument("Field::parse: expected \"Q(sqrt D)\"");
        std::string num = t.substr(6, t.size() - 7);
        return Field::make(std::stol(num));
    }

    std::pair<Real, Real> Field::omega_embeddings() const
    {
        Real s = sqrt(Real(ctx_->d));
        if (ctx_->half)
            return {(1 + s) / 2, (1 - s) / 2};
        return {s, -s};
    }

    const FieldElement &Field::fundamental_unit() const
    {
        std::call_once(ctx_->unit_once, [this]
                       {
        try {
            const long tr = omega_trace();
            const long nm = omega_norm();
            const long box = ctx_->unit_box;
            const mpz_class disc_z(ctx_->disc);
            std::optional<FieldElement> best;
            for (long b = 1; b <= box && !best; ++b) {
                mpz_class b2 = mpz_class(b) * b;
                std::vector<FieldElement> found;
                for (int ns : {+1, -1}) {
                    mpz_class da = b2 * disc_z + 4 * ns;
                    if (da < 0 || !mpz_perfect_square_p(da.get_mpz_t()))
                        continue;
                    mpz_class r = sqrt(da);
                    for (int sgn : {+1, -1}) {
                        mpz_class twice_a = -mpz_class(tr) * b + sgn * r;
                        if (twice_a % 2 != 0)
                            continue;
                        mpz_class av = twice_a / 2;
                        FieldElement u(*this, mpq_class(av), mpq_class(b));
                        if ((u - one()).sign_embedding(1) > 0)
                            found.push_back(u);
                    }
                }
                for (auto& u : found)
                    if (!best || (u - *best).sign_embedding(1) < 0)
                        best = u;
            }
            if (!best)
                throw std::domain_error(
                    "fundamental_unit: search bound exceeded");
            ctx_->unit = *best;
        } catch (...) {
            ctx_->unit_error = std::current_exception();
        } });
        if (ctx_->unit_error)
            std::rethrow_exception(ctx_->unit_error);
        return *ctx_->unit;
    }

    FieldElement Field::totally_positive_unit() const
    {
        const FieldElement &u = fundamental_unit();
        if (u.norm() == 1)
            return u;
        return u * u;
    }

    FieldElement FieldElement::operator+(const FieldElement &o) const
    {
        return FieldElement(f_, a_ + o.a_, b_ + o.b_);
    }
    FieldElement FieldElement::operator-(const FieldElement &o) const
    {
        return FieldElement(f_, a_ - o.a_, b_ - o.b_);
    }
    FieldElement FieldElement::operator-() const
    {
        return FieldElement(f_, -a_, -b_);
    }

    FieldElement FieldElement::operator*(const FieldElement &o) const
    {
        // omega^2 = tr*omega - nm
        mpq_class tr(f_.omega_trace()), nm(f_.omega_norm());
        mpq_class bb = b_ * o.b_;
        return FieldElement(f_,
                            a_ * o.a_ - bb * nm,
                            a_ * o.b_ + b_ * o.a_ + bb * tr);
    }
    FieldElement FieldElement::operator*(const mpq_class &s) const
    {
        return FieldElement(f_, a_ * s, b_ * s);
    }

    FieldElement FieldElement::conj() const
    {
        mpq_class tr(f_.omega_trace());
        return FieldElement(f_, a_ + b_ * tr, -b_);
    }

    mpq_class FieldElement::norm() const
    {
        mpq_class tr(f_.omega_trace()), nm(f_.omega_norm());
        return a_ * a_ + a_ * b_ * tr + b_ * b_ * nm;
    }
    mpq_class FieldElement::trace() const
    {
        return 2 * a_ + b_ * mpq_class(f_.omega_trace());
    }

    FieldElement FieldElement::inverse() const
    {
        mpq_class n = norm();
        if (n == 0)
            throw std::domain_error("FieldElement::inverse: zero element");
        return conj() * mpq_class(1 / n);
    }
    FieldElement FieldElement::operator/(const FieldElement &o) const
    {
        return *this * o.inverse();
    }

    FieldElement FieldElement::pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        FieldElement acc = f_.one();
        FieldElement base = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k)
        {
            if (k & 1)
                acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    int FieldElement::sign_embedding(int j) const
    {
        // x^(j) = P +- Q*sqrt(D) with P = a + b*tr/2, Q = b*s/2.
        mpq_class P = a_ + b_ * mpq_class(f_.omega_trace()) / 2;
        mpq_class Q = b_ * mpq_class(f_.omega_is_half() ? 1 : 2) / 2;
        if (j == 2)
            Q = -Q;
        int sp = sgn(P), sq = sgn(Q);
        if (sq == 0)
            return sp;
        if (sp == 0)
            return sq;
        if (sp == sq)
            return sp;
        // opposite signs: compare P^2 with Q^2 * D
        mpq_class lhs = P * P, rhs = Q * Q * f_.d();
        int c = cmp(lhs, rhs);
        if (c == 0)
            return 0; // impossible for square-free D > 1 unless zero
        return (c > 0) ? sp : sq;
    }

    std::pair<Real, Real> FieldElement::embeddings() const
    {
        auto [w1, w2] = f_.omega_embeddings();
        Real ra = to_real(a_), rb = to_real(b_);
        return {ra + rb * w1, ra + rb * w2};
    }

    Real FieldElement::embedding(int j) const
    {
        auto [e1, e2] = embeddings();
        return j == 1 ? e1 : e2;
    }

    std::string to_string(const mpq_class &q)
    {
        std::ostringstream os;
        os << q.get_num();
        if (q.get_den() != 1)
            os << "/" << q.get_den();
        return os.str();
    }

    mpq_class parse_rational(const std::string &s)
    {
        if (s.empty())
            throw std::invalid_argument("parse_rational: empty string");
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("parse_rational: bad rational '" + s + "'");
        q.canonicalize();
        return q;
    }

    std::string FieldElement::to_string() const
    {
        if (is_zero())
            return "0";
        std::string out;
        if (a_ != 0)
            out += hmf::to_string(a_);
        if (b_ != 0)
        {
            if (!out.empty())
                out += (b_ > 0) ? " + " : " - ";
            else if (b_ < 0)
                out += "-";
            mpq_class ab = abs(b_);
            if (ab != 1)
                out += hmf::to_string(ab) + "*w";
            else
                out += "w";
        }
        return out;
    }

    FieldElement FieldElement::parse(const Field &f, const std::string &s)
    {
        // Split into signed terms; each term is RAT, RAT*w, or w.
        std::string t;
        for (char c : s)
            if (!isspace(static_cast<unsigned char>(c)))
                t += c;
        if (t.empty())
            throw std::invalid_argument("FieldElement::parse: empty string");
        mpq_class a(0), b(0);
        size_t i = 0;
        while (i < t.size())
        {
            int sign = 1;
            while (i < t.size() && (t[i] == '+' || t[i] == '-'))
            {
                if (t[i] == '-')
                    sign = -sign;
                ++i;
            }
            size_t j = i;
            while (j < t.size() && t[j] != '+' && t[j] != '-')
                ++j;
            std::string term = t.substr(i, j - i);
            if (term.empty())
                throw std::invalid_argument("FieldElement::parse: bad syntax '" + s + "'");
            if (term == "w")
                b += sign;
            else if (term.size() > 2 && term.substr(term.size() - 2) == "*w")
                b += sign * parse_rational(term.substr(0, term.size() - 2));
            else if (term.back() == 'w')
                throw std::invalid_argument("FieldElement::parse: bad term '" + term + "'");
            else
                a += sign * parse_rational(term);
            i = j;
        }
        return FieldElement(f, a, b);
    }

} // namespace hmf
