#include "hmf/ideals.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hmf
{

    IdealHNF::IdealHNF(Field f, mpz_class a, mpz_class b, mpq_class c)
        : f_(std::move(f)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c))
    {
        c_.canonicalize();
        if (a_ <= 0 || c_ <= 0)
            throw std::invalid_argument("IdealHNF: nonpositive HNF data");
        b_ = ((b_ % a_) + a_) % a_;
        // omega-closure: a | Nm(b + omega)
        mpz_class nm_bw = b_ * b_ + b_ * f_.omega_trace() + f_.omega_norm();
        if (nm_bw % a_ != 0)
            throw std::invalid_argument("IdealHNF: module is not omega-closed");
    }

    IdealHNF IdealHNF::unit_ideal(const Field &f)
    {
        return IdealHNF(f, 1, 0, 1);
    }

    IdealHNF IdealHNF::from_rational(const Field &f, const mpq_class &n)
    {
        if (n == 0)
            throw std::invalid_argument("IdealHNF::from_rational: zero");
        return IdealHNF(f, 1, 0, abs(n));
    }

    IdealHNF IdealHNF::from_coord_lattice(
        const Field &f, std::vector<std::pair<mpz_class, mpz_class>> vecs,
        const mpz_class &den)
    {
        // Lattice basis reduction to ((A,0),(B,C)) with C = gcd of y-coords.
        mpz_class C = 0, wx = 0;
        for (auto &[x, y] : vecs)
        {
            if (y == 0)
                continue;
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                       C.get_mpz_t(), y.get_mpz_t());
            wx = s * wx + t * x;
            C = g;
        }
        if (C == 0)
            throw std::invalid_argument("IdealHNF: lattice has rank < 2");
        mpz_class A = 0;
        for (auto &[x, y] : vecs)
        {
            mpz_class r = x - (y / C) * wx;
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), r.get_mpz_t());
            A = g;
        }
        if (A == 0)
            throw std::invalid_argument("IdealHNF: lattice has rank < 2");
        // omega-closure of the O_F-module forces C | A and C | B.
        if (A % C != 0 || wx % C != 0)
            throw std::invalid_argument("IdealHNF: module is not omega-closed");
        mpz_class a = A / C;
        mpz_class b = wx / C;
        mpq_class c(C, den);
        return IdealHNF(f, a, b, c);
    }

    IdealHNF IdealHNF::from_generators(const Field &f,
                                       const std::vector<FieldElement> &gens)
    {
        std::vector<FieldElement> zgens;
        for (const auto &g : gens)
        {
            if (g.is_zero())
                continue;
            zgens.push_back(g);
            zgens.push_back(g * f.omega());
        }
        if (zgens.empty())
            throw std::invalid_argument("IdealHNF::from_generators: all generators zero");
        mpz_class den = 1;
        for (const auto &g : zgens)
        {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), g.a().get_den().get_mpz_t());
            mpz_lcm(den.get_mpz_t(), l.get_mpz_t(), g.b().get_den().get_mpz_t());
        }
        std::vector<std::pair<mpz_class, mpz_class>> vecs;
        for (const auto &g : zgens)
        {
            mpq_class x = g.a() * den, y = g.b() * den;
            vecs.emplace_back(x.get_num(), y.get_num());
        }
        return from_coord_lattice(f, std::move(vecs), den);
    }

    IdealHNF IdealHNF::principal(const FieldElement &x)
    {
        return from_generators(x.field(), {x});
    }

    std::pair<FieldElement, FieldElement> IdealHNF::basis() const
    {
        FieldElement e1 = f_.element(mpq_class(a_) * c_, 0);
        FieldElement e2 = f_.element(mpq_class(b_) * c_, c_);
        return {e1, e2};
    }

    bool IdealHNF::contains(const FieldElement &x) const
    {
        if (x.is_zero())
            return true;
        mpq_class y = x.b() / c_;
        if (y.get_den() != 1)
            return false;
        mpq_class u = x.a() / c_ - y * b_;
        if (u.get_den() != 1)
            return false;
        return u.get_num() % a_ == 0;
    }

    bool IdealHNF::contains_ideal(const IdealHNF &other) const
    {
        auto [e1, e2] = other.basis();
        return contains(e1) && contains(e2);
    }

    IdealHNF IdealHNF::operator*(const IdealHNF &o) const
    {
        auto [x1, x2] = basis();
        auto [y1, y2] = o.basis();
        return from_generators(f_, {x1 * y1, x1 * y2, x2 * y1, x2 * y2});
    }

    IdealHNF IdealHNF::scaled(const mpq_class &s) const
    {
        if (s <= 0)
            throw std::invalid_argument("IdealHNF::scaled: scale must be positive");
        return IdealHNF(f_, a_, b_, c_ * s);
    }

    IdealHNF IdealHNF::conjugate() const
    {
        mpz_class bq = -b_ - f_.omega_trace();
        return IdealHNF(f_, a_, bq, c_);
    }

    IdealHNF IdealHNF::inverse() const
    {
        IdealHNF cj = conjugate();
        return cj.scaled(1 / norm());
    }

    IdealHNF IdealHNF::pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        IdealHNF acc = unit_ideal(f_);
        IdealHNF base = *this;
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

    IdealHNF IdealHNF::primitive_part() const
    {
        return IdealHNF(f_, a_, b_, 1);
    }

    int IdealHNF::valuation(const IdealHNF &prime) const
    {
        IdealHNF cur = *this;
        IdealHNF pinv = prime.inverse();
        int v = 0;
        while (prime.contains_ideal(cur))
        {
            cur = cur * pinv;
            ++v;
            if (v > 4096)
                throw std::logic_error("IdealHNF::valuation: runaway");
        }
        return v;
    }

    bool IdealHNF::operator<(const IdealHNF &o) const
    {
        int c = cmp(norm(), o.norm());
        if (c != 0)
            return c < 0;
        if (a_ != o.a_)
            return a_ < o.a_;
        if (b_ != o.b_)
            return b_ < o.b_;
        return c_ < o.c_;
    }

    std::string IdealHNF::label() const
    {
        if (!is_integral())
            throw std::domain_error("IdealHNF::label: non-integral ideal");
        std::ostringstream os;
        os << a_ << "." << b_;
        if (c_ != 1)
            os << "*" << c_.get_num();
        return os.str();
    }

    std::string IdealHNF::to_string() const
    {
        std::ostringstream os;
        os << a_ << "." << b_;
        if (c_ != 1)
        {
            os << "*" << c_.get_num();
            if (c_.get_den() != 1)
                os << "/" << c_.get_den();
        }
        return os.str();
    }

    IdealHNF IdealHNF::parse_label(const Field &f, const std::string &s)
    {
        auto dot = s.find('.');
        if (dot == std::string::npos)
            throw std::invalid_argument("ideal label: expected \"a.b\" form: " + s);
        auto star = s.find('*');
        std::string sa = s.substr(0, dot);
        std::string sb = s.substr(dot + 1, (star == std::string::npos ? s.size() : star) - dot - 1);
        mpz_class a(sa), b(sb);
        mpq_class c(1);
        if (star != std::string::npos)
            c = parse_rational(s.substr(star + 1));
        return IdealHNF(f, a, b, c);
    }

    FieldElement IdealHNF::reduce(const FieldElement &x) const
    {
        if (!is_integral())
            throw std::domain_error("IdealHNF::reduce: non-integral modulus");
        if (!x.is_integral())
            throw std::domain_error("IdealHNF::reduce: non-integral element");
        mpz_class cz = c_.get_num();
        mpz_class u = x.a().get_num(), v = x.b().get_num();
        mpz_class vr = ((v % cz) + cz) % cz;
        mpz_class k = (v - vr) / cz;
        mpz_class ac = a_ * cz;
        mpz_class ur = u - k * (b_ * cz);
        ur = ((ur % ac) + ac) % ac;
        return f_.element(mpq_class(ur), mpq_class(vr));
    }

    std::vector<long> primes_up_to(long bound)
    {
        std::vector<long> out;
        if (bound < 2)
            return out;
        std::vector<bool> sieve(bound + 1, true);
        for (long i = 2; i <= bound; ++i)
        {
            if (!sieve[i])
                continue;
            out.push_back(i);
            for (long j = 2 * i; j <= bound; j += i)
                sieve[j] = false;
        }
        return out;
    }

    PrimeSplitting prime_splitting(const Field &f, const mpz_class &p)
    {
        if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
            throw std::invalid_argument("prime_splitting: p must be prime");
        PrimeSplitting out;
        const long tr = f.omega_trace();
        const long nm = f.omega_norm();
        auto minpoly_root = [&](const mpz_class &r)
        {
            mpz_class v = r * r - tr * r + nm;
            return v % p == 0;
        };
        auto prime_above = [&](const mpz_class &r)
        {
            mpz_class b = ((-r) % p + p) % p;
            return IdealHNF::from_generators(
                f, {f.element(mpq_class(p), 0),
                    f.element(mpq_class(b), 1)});
        };

        bool ramified = (mpz_class(f.disc()) % p == 0);
        if (ramified)
        {
            for (mpz_class r = 0; r < p; ++r)
                if (minpoly_root(r))
                {
                    out.type = SplitType::ramified;
                    out.primes.push_back({prime_above(r), 2, 1});
                    return out;
                }
            throw std::logic_error("prime_splitting: ramified prime without root");
        }
        // find roots of x^2 - tr x + nm mod p
        std::vector<mpz_class> roots;
        for (mpz_class r = 0; r < p && roots.size() < 2; ++r)
            if (minpoly_root(r))
                roots.push_back(r);
        if (roots.size() == 2)
        {
            out.type = SplitType::split;
            out.primes.push_back({prime_above(roots[0]), 1, 1});
            out.primes.push_back({prime_above(roots[1]), 1, 1});
            std::sort(out.primes.begin(), out.primes.end(),
                      [](const auto &x, const auto &y)
                      { return x.prime < y.prime; });
        }
        else
        {
            out.type = SplitType::inert;
            out.primes.push_back(
                {IdealHNF::from_rational(f, mpq_class(p)), 1, 2});
        }
        return out;
    }

    PrincipalityResult is_principal(const IdealHNF &ideal)
    {
        PrincipalityResult res;
        const Field &f = ideal.field();
        // content is a rational ideal, always principal
        mpq_class content = ideal.content();
        IdealHNF prim = ideal.primitive_part();
        mpz_class N = prim.a();
        if (N == 1)
        {
            res.principal = true;
            res.generator = f.element(content, 0);
            return res;
        }
        const FieldElement &eps = f.fundamental_unit();
        // A generator, if one exists, has a unit multiple with
        // |x^(1)|,|x^(2)| <= sqrt(N * eps^(1)).
        Real m = sqrt(to_real(N) * eps.embedding(1)) * Real("1.0000001");
        Real gap = f.omega_is_half() ? sqrt(Real(f.d())) : 2 * sqrt(Real(f.d()));
        long vmax = static_cast<long>((2 * m / gap).convert_to<double>()) + 2;
        const long tr = f.omega_trace();
        const long nm = f.omega_norm();
        const mpz_class disc_z(f.disc());

        auto try_candidate = [&](const mpz_class &u, const mpz_class &v) -> bool
        {
            FieldElement x = f.element(mpq_class(u), mpq_class(v));
            if (!prim.contains(x))
                return false;
            mpq_class nx = x.norm();
            if (abs(nx) != N)
                return false;
            res.principal = true;
            res.generator = x * content;
            return true;
        };

        for (long step = 0; step <= 2 * vmax; ++step)
        {
            long v = (step % 2 == 0) ? step / 2 : -(step / 2 + 1);
            mpz_class vz(v);
            for (int ns : {+1, -1})
            {
                mpz_class da = vz * vz * disc_z + 4 * ns * N;
                if (da < 0 || !mpz_perfect_square_p(da.get_mpz_t()))
                    continue;
                mpz_class r = sqrt(da);
                for (int sgn : {+1, -1})
                {
                    mpz_class twice_u = -mpz_class(tr) * vz + sgn * r;
                    if (twice_u % 2 != 0)
                        continue;
                    if (try_candidate(twice_u / 2, vz))
                        return res;
                    if (sgn == -1 && r == 0)
                        break;
                }
            }
        }
        return res; // proved not principal: the box covers a unit fundamental domain
    }

    bool equivalent(const IdealHNF &a, const IdealHNF &b)
    {
        IdealHNF q = a * b.inverse();
        return is_principal(q.primitive_part()).principal;
    }

    int ClassGroup::class_of(const IdealHNF &a) const
    {
        for (size_t i = 0; i < representatives.size(); ++i)
            if (equivalent(a, representatives[i]))
                return static_cast<int>(i);
        throw std::logic_error("ClassGroup::class_of: no matching class");
    }

    ClassGroup class_group(const Field &f)
    {
        ClassGroup g;
        g.base = f;
        g.minkowski_bound = static_cast<long>(std::sqrt(static_cast<double>(f.disc())) / 2.0);
        g.narrow_equals_ordinary = (f.fundamental_unit().norm() == -1);

        std::vector<IdealHNF> gen_primes;
        for (long p : primes_up_to(g.minkowski_bound))
        {
            PrimeSplitting sp = prime_splitting(f, mpz_class(p));
            for (const auto &e : sp.primes)
                if (e.prime.norm() <= g.minkowski_bound)
                    gen_primes.push_back(e.prime);
        }

        std::vector<IdealHNF> reps{IdealHNF::unit_ideal(f)};
        for (const auto &P : gen_primes)
        {
            bool known = false;
            for (const auto &r : reps)
                if (equivalent(P, r))
                {
                    known = true;
                    break;
                }
            if (!known)
                reps.push_back(P);
        }
        // close under composition
        bool grew = true;
        while (grew)
        {
            grew = false;
            size_t n = reps.size();
            for (size_t i = 1; i < n && !grew; ++i)
                for (size_t j = i; j < n && !grew; ++j)
                {
                    IdealHNF prod = (reps[i] * reps[j]).primitive_part();
                    bool known = false;
                    for (const auto &r : reps)
                        if (equivalent(prod, r))
                        {
                            known = true;
                            break;
                        }
                    if (!known)
                    {
                        reps.push_back(prod);
                        grew = true;
                    }
                }
        }

        // final representatives: O_F, then smallest generating prime per class
        std::vector<IdealHNF> final_reps{IdealHNF::unit_ideal(f)};
        for (size_t i = 1; i < reps.size(); ++i)
        {
            std::optional<IdealHNF> best;
            for (const auto &P : gen_primes)
                if (equivalent(P, reps[i]) && (!best || P < *best))
                    best = P;
            final_reps.push_back(best ? *best : reps[i]);
        }
        std::sort(final_reps.begin() + 1, final_reps.end());

        g.representatives = final_reps;
        g.h = static_cast<long>(final_reps.size());
        for (const auto &P : gen_primes)
            g.generator_primes.emplace_back(P, g.class_of(P));

        g.composition.assign(g.h, std::vector<int>(g.h, 0));
        for (int i = 0; i < g.h; ++i)
            for (int j = 0; j < g.h; ++j)
                g.composition[i][j] =
                    g.class_of(g.representatives[i] * g.representatives[j]);
        return g;
    }

    IdealFactorization factor_ideal(const IdealHNF &a, long smoothness_bound)
    {
        if (!a.is_integral())
            throw std::invalid_argument("factor_ideal: ideal must be integral");
        IdealFactorization out;
        const Field &f = a.field();
        mpz_class n = a.norm().get_num();
        IdealHNF rest = a;
        for (long p : primes_up_to(smoothness_bound))
        {
            if (n % p != 0)
                continue;
            PrimeSplitting sp = prime_splitting(f, mpz_class(p));
            for (const auto &e : sp.primes)
            {
                int v = rest.valuation(e.prime);
                if (v > 0)
                {
                    out.factors.emplace_back(e.prime, v);
                    rest = rest * e.prime.inverse().pow(v);
                }
            }
            while (n % p == 0)
                n /= p;
        }
        if (!rest.is_unit_ideal())
            out.unfactored = rest;
        return out;
    }

    IdealHNF different_ideal(const Field &f)
    {
        // derivative of the minimal polynomial at omega: 2*omega - tr
        FieldElement d = f.element(mpq_class(-f.omega_trace()), 2);
        return IdealHNF::principal(d);
    }

    std::vector<IdealHNF> enumerate_ideals(const Field &f, long bound)
    {
        if (bound < 1)
            throw std::invalid_argument("enumerate_ideals: bound must be >= 1");
        std::vector<std::pair<IdealHNF, mpz_class>> primes; // (prime, norm)
        for (long p : primes_up_to(bound))
        {
            PrimeSplitting sp = prime_splitting(f, mpz_class(p));
            for (const auto &e : sp.primes)
            {
                mpq_class nq = e.prime.norm();
                if (nq <= bound)
                    primes.emplace_back(e.prime, nq.get_num());
            }
        }
        std::vector<IdealHNF> out{IdealHNF::unit_ideal(f)};
        std::vector<mpz_class> norms{1};
        for (const auto &[P, np] : primes)
        {
            size_t n = out.size();
            for (size_t i = 0; i < n; ++i)
            {
                mpz_class cur = norms[i] * np;
                IdealHNF acc = out[i] * P;
                while (cur <= bound)
                {
                    out.push_back(acc);
                    norms.push_back(cur);
                    cur *= np;
                    if (cur <= bound)
                        acc = acc * P;
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

} // namespace hmf
