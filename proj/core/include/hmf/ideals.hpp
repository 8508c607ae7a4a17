#pragma once

#include "hmf/quadfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hmf
{

    /**
     * Fractional ideal of O_F in Hermite normal form: the module
     *
     *     c * ( Z*a  +  Z*(b + omega) ),   a >= 1,  0 <= b < a,  c > 0 rational,
     *
     * with a | Nm(b + omega) (closure under multiplication by omega).  The
     * triple (a, b, c) is unique, so equality of ideals is equality of triples.
     * Integral ideals have integer content c; norm(ideal) = a * c^2.
     */
    class IdealHNF
    {
    public:
        IdealHNF() = default;

        static IdealHNF unit_ideal(const Field &f);
        // O_F-module generated by the given elements (not all zero).
        static IdealHNF from_generators(const Field &f,
                                        const std::vector<FieldElement> &gens);
        static IdealHNF principal(const FieldElement &x);
        static IdealHNF from_rational(const Field &f, const mpq_class &n);

        bool valid() const { return f_.valid(); }
        const Field &field() const { return f_; }
        const mpz_class &a() const { return a_; }
        const mpz_class &b() const { return b_; }
        const mpq_class &content() const { return c_; }

        mpq_class norm() const { return mpq_class(a_) * c_ * c_; }
        bool is_integral() const { return c_.get_den() == 1; }
        bool is_unit_ideal() const { return a_ == 1 && b_ == 0 && c_ == 1; }

        std::pair<FieldElement, FieldElement> basis() const;

        bool contains(const FieldElement &x) const;
        bool contains_ideal(const IdealHNF &other) const; // other subset of this

        IdealHNF operator*(const IdealHNF &o) const;
        IdealHNF scaled(const mpq_class &s) const; // multiply by rational s > 0
        IdealHNF conjugate() const;
        IdealHNF inverse() const;
        IdealHNF pow(long e) const;
        // Primitive integral part (content stripped).
        IdealHNF primitive_part() const;

        // Largest k with this contained in prime^k (this integral).
        int valuation(const IdealHNF &prime) const;

        bool operator==(const IdealHNF &o) const
        {
            return a_ == o.a_ && b_ == o.b_ && c_ == o.c_;
        }
        bool operator!=(const IdealHNF &o) const { return !(*this == o); }
        // Deterministic order: by (norm, a, b, content).
        bool operator<(const IdealHNF &o) const;

        // "a.b" for integral primitive ideals, "a.b*n" with integer content n.
        // Throws for non-integral ideals.
        std::string label() const;
        // General printable form (fractional content allowed).
        std::string to_string() const;
        static IdealHNF parse_label(const Field &f, const std::string &s);

        // Canonical residue of an integral element modulo this integral ideal.
        FieldElement reduce(const FieldElement &x) const;

    private:
        Field f_;
        mpz_class a_{1}, b_{0};
        mpq_class c_{1};

        IdealHNF(Field f, mpz_class a, mpz_class b, mpq_class c);
        static IdealHNF from_coord_lattice(const Field &f,
                                           std::vector<std::pair<mpz_class, mpz_class>> vecs,
                                           const mpz_class &den);
    };

    enum class SplitType
    {
        split,
        inert,
        ramified
    };

    struct PrimeSplitting
    {
        SplitType type;
        struct Entry
        {
            IdealHNF prime;
            int e, f;
        };
        std::vector<Entry> primes; // product of prime^e equals pO_F
    };

    // Splitting of the rational prime p in F.
    PrimeSplitting prime_splitting(const Field &f, const mpz_class &p);

    struct PrincipalityResult
    {
        bool principal = false;
        // Engaged iff principal; deterministic generator from the search order.
        std::optional<FieldElement> generator;
    };

    // Exhaustive element search over one unit fundamental domain; a negative
    // result is a proof of non-principality.
    PrincipalityResult is_principal(const IdealHNF &a);
    bool equivalent(const IdealHNF &a, const IdealHNF &b);

    struct ClassGroup
    {
        Field base;
        long h = 1;
        std::vector<IdealHNF> representatives; // representatives[0] = O_F
        // class index of each generating prime of norm <= Minkowski bound
        std::vector<std::pair<IdealHNF, int>> generator_primes;
        std::vector<std::vector<int>> composition; // class index table
        long minkowski_bound = 1;
        // true when Nm(fundamental unit) = -1 (narrow class number = h)
        bool narrow_equals_ordinary = true;

        int class_of(const IdealHNF &a) const;
    };

    ClassGroup class_group(const Field &f);

    struct IdealFactorization
    {
        std::vector<std::pair<IdealHNF, int>> factors;
        std::optional<IdealHNF> unfactored; // engaged when norm not B-smooth
        bool complete() const { return !unfactored.has_value(); }
    };

    IdealFactorization factor_ideal(const IdealHNF &a, long smoothness_bound);

    // The different ideal (f'(omega)); norm = |disc|.
    IdealHNF different_ideal(const Field &f);

    // All integral ideals of norm <= bound, sorted by (norm, a, b); complete
    // and duplicate-free, built multiplicatively from prime_splitting.
    std::vector<IdealHNF> enumerate_ideals(const Field &f, long bound);

    std::vector<long> primes_up_to(long bound);

} // namespace hmf
