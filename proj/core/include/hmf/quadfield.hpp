#pragma once

#include "hmf/numeric.hpp"

#include <gmpxx.h>

#include <memory>
#include <string>
#include <utility>

namespace hmf
{

    class FieldElement;

    /**
     * A real quadratic field F = Q(sqrt D), D > 1 square-free, with ring of
     * integers Z[omega] where omega = (1+sqrt D)/2 if D = 1 mod 4 and
     * omega = sqrt D otherwise.  Copies share one immutable context; the
     * fundamental unit is computed on first use and memoized (thread-safe).
     */
    class Field
    {
    public:
        Field() = default; // invalid until assigned from make()

        // Throws std::invalid_argument unless D > 1 and square-free.
        static Field make(long d, long unit_search_bound = 10000);

        bool valid() const { return static_cast<bool>(ctx_); }
        long d() const;
        long disc() const;
        bool omega_is_half() const; // omega = (1+sqrt D)/2 ?
        // Minimal polynomial of omega is x^2 - omega_trace()*x + omega_norm().
        long omega_trace() const; // 1 or 0
        long omega_norm() const;  // (1-D)/4 or -D

        FieldElement element(const mpq_class &a, const mpq_class &b) const;
        FieldElement from_integers(long a, long b) const;
        FieldElement zero() const;
        FieldElement one() const;
        FieldElement omega() const;
        FieldElement sqrt_d() const; // 2*omega - 1 or omega

        // Smallest unit > 1 in the search box; throws std::domain_error if the
        // box is exhausted first.
        const FieldElement &fundamental_unit() const;
        // eps0 if Nm(eps0) = 1 (then automatically totally positive), else eps0^2.
        FieldElement totally_positive_unit() const;

        // Embeddings of omega at the current working precision.
        std::pair<Real, Real> omega_embeddings() const;

        bool operator==(const Field &o) const;
        bool operator!=(const Field &o) const { return !(*this == o); }

        std::string to_string() const; // "Q(sqrt 5)"
        static Field parse(const std::string &s);

    private:
        struct Ctx;
        std::shared_ptr<Ctx> ctx_;
        explicit Field(std::shared_ptr<Ctx> c) : ctx_(std::move(c)) {}
    };

    /**
     * Element a + b*omega of F, with exact rational a, b.  All ring operations
     * are exact; embeddings into R are computed on demand at the working
     * precision.  Values are immutable after construction.
     */
    class FieldElement
    {
    public:
        FieldElement() = default;

        FieldElement(Field f, mpq_class a, mpq_class b)
            : f_(std::move(f)), a_(std::move(a)), b_(std::move(b))
        {
            a_.canonicalize();
            b_.canonicalize();
        }

        const Field &field() const { return f_; }
        const mpq_class &a() const { return a_; }
        const mpq_class &b() const { return b_; }

        bool is_zero() const { return a_ == 0 && b_ == 0; }
        bool is_rational() const { return b_ == 0; }
        bool is_integral() const
        {
            return a_.get_den() == 1 && b_.get_den() == 1;
        }
        bool is_one() const { return a_ == 1 && b_ == 0; }

        FieldElement operator+(const FieldElement &o) const;
        FieldElement operator-(const FieldElement &o) const;
        FieldElement operator-() const;
        FieldElement operator*(const FieldElement &o) const;
        FieldElement operator*(const mpq_class &s) const;
        FieldElement conj() const;
        FieldElement inverse() const; // throws on zero
        FieldElement operator/(const FieldElement &o) const;
        FieldElement pow(long e) const;

        mpq_class norm() const;  // a^2 + ab*Tr(w) + b^2*N(w)
        mpq_class trace() const; // 2a + b*Tr(w)

        // Exact sign of the j'th real embedding (j = 1 or 2): -1, 0, +1.
        // Decided by rational comparisons only, never floating point.
        int sign_embedding(int j) const;
        bool is_totally_positive() const
        {
            return sign_embedding(1) > 0 && sign_embedding(2) > 0;
        }

        std::pair<Real, Real> embeddings() const;
        Real embedding(int j) const;

        bool operator==(const FieldElement &o) const
        {
            return a_ == o.a_ && b_ == o.b_;
        }
        bool operator!=(const FieldElement &o) const { return !(*this == o); }
        // Lexicographic on (a, b); used as a deterministic map order.
        bool operator<(const FieldElement &o) const
        {
            int c = cmp(a_, o.a_);
            if (c != 0)
                return c < 0;
            return cmp(b_, o.b_) < 0;
        }

        std::string to_string() const;
        // Accepts the printed grammar plus compact forms like "w", "1-w", "3/2".
        static FieldElement parse(const Field &f, const std::string &s);

    private:
        Field f_;
        mpq_class a_, b_;
    };

    std::string to_string(const mpq_class &q);
    mpq_class parse_rational(const std::string &s);

    /// 2x2 matrix over F; rows (a b; c d).
    struct Mat2
    {
        FieldElement a, b, c, d;

        FieldElement det() const { return a * d - b * c; }
        bool is_unimodular() const { return det().is_one(); }

        Mat2 operator*(const Mat2 &o) const
        {
            return {a * o.a + b * o.c, a * o.b + b * o.d,
                    c * o.a + d * o.c, c * o.b + d * o.d};
        }
        Mat2 inverse_unimodular() const // requires det = 1
        {
            return {d, -b, -c, a};
        }
        bool operator==(const Mat2 &o) const
        {
            return a == o.a && b == o.b && c == o.c && d == o.d;
        }
        static Mat2 identity(const Field &f)
        {
            return {f.one(), f.zero(), f.zero(), f.one()};
        }
    };

} // namespace hmf
