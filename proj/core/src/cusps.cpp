#include "hmf/cusps.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hmf
{

    Cusp make_cusp(const FieldElement &alpha, const FieldElement &beta)
    {
        if (alpha.is_zero() && beta.is_zero())
            throw std::invalid_argument("make_cusp: (0, 0) is not a point of P^1");
        return Cusp{alpha, beta};
    }

    Cusp infinity_cusp(const Field &f)
    {
        return Cusp{f.one(), f.zero()};
    }

    Cusp normalize(const Cusp &k)
    {
        mpz_class den = 1, l;
        for (const mpq_class *q : {&k.alpha.a(), &k.alpha.b(), &k.beta.a(), &k.beta.b()})
        {
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), q->get_den().get_mpz_t());
            den = l;
        }
        mpq_class s(den);
        // strip the integer content
        mpz_class g = 0;
        for (const mpq_class *q : {&k.alpha.a(), &k.alpha.b(), &k.beta.a(), &k.beta.b()})
        {
            mpq_class v = *q * s;
            mpz_class t;
            mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), v.get_num().get_mpz_t());
            g = t;
        }
        s /= g;
        FieldElement alpha = k.alpha * s, beta = k.beta * s;
        // deterministic sign: first nonzero of (beta.a, beta.b, alpha.a, alpha.b) > 0
        int sign = 0;
        for (const mpq_class *q : {&beta.a(), &beta.b(), &alpha.a(), &alpha.b()})
            if (*q != 0)
            {
                sign = sgn(*q);
                break;
            }
        if (sign < 0)
        {
            alpha = -alpha;
            beta = -beta;
        }
        return Cusp{alpha, beta};
    }

    bool same_cusp(const Cusp &x, const Cusp &y)
    {
        return (x.alpha * y.beta - x.beta * y.alpha).is_zero();
    }

    Cusp act(const Mat2 &gamma, const Cusp &k)
    {
        if (!gamma.is_unimodular())
            throw std::invalid_argument("act: matrix must have determinant 1");
        return make_cusp(gamma.a * k.alpha + gamma.b * k.beta,
                         gamma.c * k.alpha + gamma.d * k.beta);
    }

    IdealHNF cusp_ideal(const Cusp &k)
    {
        const Field &f = k.alpha.field().valid() ? k.alpha.field() : k.beta.field();
        return IdealHNF::from_generators(f, {k.alpha, k.beta});
    }

    int cusp_ideal_class(const ClassGroup &cls, const Cusp &k)
    {
        return cls.class_of(cusp_ideal(normalize(k)));
    }

    std::string CuspInvariant::key() const
    {
        std::ostringstream os;
        os << "c" << ideal_class << "|" << level_residue;
        return os.str();
    }

    namespace
    {

        // Distinct residues of the unit group {+-eps0^k} modulo the integral
        // ideal n, as canonical reduced elements.
        std::vector<FieldElement> unit_residues_mod(const IdealHNF &n)
        {
            const Field &f = n.field();
            const FieldElement eps = f.fundamental_unit();
            std::set<FieldElement> seen;
            std::vector<FieldElement> out;
            FieldElement x = f.one();
            for (;;)
            {
                FieldElement r = n.reduce(x);
                if (seen.count(r))
                    break;
                seen.insert(r);
                out.push_back(r);
                x = n.reduce(x * eps);
            }
            size_t m = out.size();
            for (size_t i = 0; i < m; ++i)
            {
                FieldElement r = n.reduce(-out[i]);
                if (!seen.count(r))
                {
                    seen.insert(r);
                    out.push_back(r);
                }
            }
            return out;
        }

    } // namespace

    CuspInvariant cusp_invariant(const ClassGroup &cls, const IdealHNF &level,
                                 const Cusp &kin)
    {
        if (!level.is_integral() || level.norm() < 1)
            throw std::invalid_argument(
                "cusp_invariant: level must be a nonzero integral ideal");
        Cusp k = normalize(kin);
        IdealHNF pair_ideal = cusp_ideal(k);
        CuspInvariant inv;
        inv.ideal_class = cls.class_of(pair_ideal);
        const IdealHNF &rep = cls.representatives[inv.ideal_class];

        // scale the pair so its ideal is exactly the class representative
        auto scale = is_principal(rep * pair_ideal.inverse());
        if (!scale.principal)
            throw std::logic_error("cusp_invariant: representative scaling failed");
        FieldElement xi = *scale.generator;
        FieldElement a = xi * k.alpha, b = xi * k.beta;

        IdealHNF mod = level * rep; // residues live in rep / (level*rep)
        std::string best;
        for (const FieldElement &u : unit_residues_mod(level))
        {
            std::string cand = mod.reduce(u * a).to_string() + ";" +
                               mod.reduce(u * b).to_string();
            if (best.empty() || cand < best)
                best = cand;
        }
        inv.level_residue = best;
        return inv;
    }

    CuspClassification classify_cusps(const ClassGroup &cls, const IdealHNF &level,
                                      const std::vector<Cusp> &cusps)
    {
        CuspClassification out;
        out.exact = level.is_unit_ideal();
        for (const Cusp &k : cusps)
        {
            std::string key = out.exact
                                  ? "c" + std::to_string(cusp_ideal_class(cls, k))
                                  : cusp_invariant(cls, level, k).key();
            auto it = std::find(out.keys.begin(), out.keys.end(), key);
            if (it == out.keys.end())
            {
                out.keys.push_back(key);
                out.class_of_input.push_back(static_cast<int>(out.keys.size()) - 1);
            }
            else
            {
                out.class_of_input.push_back(
                    static_cast<int>(it - out.keys.begin()));
            }
        }
        return out;
    }

    std::string cusp_to_string(const Cusp &kin)
    {
        Cusp k = normalize(kin);
        if (k.beta.is_zero())
            return "inf";
        return k.alpha.to_string() + ";" + k.beta.to_string();
    }

    Cusp parse_cusp(const Field &f, const std::string &s)
    {
        std::string t;
        for (char c : s)
            if (!isspace(static_cast<unsigned char>(c)))
                t += c;
        if (t == "inf")
            return infinity_cusp(f);
        auto semi = t.find(';');
        if (semi == std::string::npos)
            return make_cusp(FieldElement::parse(f, t), f.one());
        return make_cusp(FieldElement::parse(f, t.substr(0, semi)),
                         FieldElement::parse(f, t.substr(semi + 1)));
    }

    FieldElement random_integral_element(const Field &f, std::mt19937_64 &rng,
                                         long range)
    {
        std::uniform_int_distribution<long> coef(-range, range);
        return f.from_integers(coef(rng), coef(rng));
    }

    Cusp random_cusp(const Field &f, std::mt19937_64 &rng, long range)
    {
        for (;;)
        {
            FieldElement a = random_integral_element(f, rng, range);
            FieldElement b = random_integral_element(f, rng, range);
            if (!a.is_zero() || !b.is_zero())
                return Cusp{a, b};
        }
    }

    namespace
    {
        FieldElement random_in_ideal(const IdealHNF &n, std::mt19937_64 &rng,
                                     long range)
        {
            auto [e1, e2] = n.basis();
            std::uniform_int_distribution<long> coef(-range, range);
            return e1 * mpq_class(coef(rng)) + e2 * mpq_class(coef(rng));
        }
    } // namespace

    Mat2 random_gamma(const Field &f, std::mt19937_64 &rng, int words)
    {
        Mat2 g = Mat2::identity(f);
        std::uniform_int_distribution<int> which(0, 2);
        for (int i = 0; i < words; ++i)
        {
            switch (which(rng))
            {
            case 0:
                g = g * Mat2{f.one(), random_integral_element(f, rng, 2),
                             f.zero(), f.one()};
                break;
            case 1:
                g = g * Mat2{f.one(), f.zero(),
                             random_integral_element(f, rng, 2), f.one()};
                break;
            default:
                g = g * Mat2{f.zero(), -f.one(), f.one(), f.zero()};
            }
        }
        return g;
    }

    Mat2 random_gamma_level(const Field &f, const IdealHNF &level,
                            std::mt19937_64 &rng, int words)
    {
        if (!level.is_integral())
            throw std::invalid_argument("random_gamma_level: level must be integral");
        Mat2 g = Mat2::identity(f);
        std::uniform_int_distribution<int> which(0, 1);
        for (int i = 0; i < words; ++i)
        {
            FieldElement x = random_in_ideal(level, rng, 2);
            if (which(rng))
                g = g * Mat2{f.one(), x, f.zero(), f.one()};
            else
                g = g * Mat2{f.one(), f.zero(), x, f.one()};
        }
        return g;
    }

} // namespace hmf
