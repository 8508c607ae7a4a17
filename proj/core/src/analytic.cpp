#include "hmf/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hmf
{

    AutomorphyWeight AutomorphyWeight::eisenstein(int k)
    {
        if (k <= 2 || k % 2 != 0)
            throw std::invalid_argument(
                "AutomorphyWeight::eisenstein: weight must be even and > 2");
        return {k, k};
    }

    AutomorphyWeight AutomorphyWeight::poincare(int k1, int k2)
    {
        if (k1 <= 2 || k2 <= 2)
            throw std::invalid_argument(
                "AutomorphyWeight::poincare: all weights must be > 2");
        return {k1, k2};
    }

    H2Point apply_moebius(const Mat2 &gamma, const H2Point &z)
    {
        auto [a1, a2] = gamma.a.embeddings();
        auto [b1, b2] = gamma.b.embeddings();
        auto [c1, c2] = gamma.c.embeddings();
        auto [d1, d2] = gamma.d.embeddings();
        Cplx w1 = (z.first * a1 + Cplx(b1)) / (z.first * c1 + Cplx(d1));
        Cplx w2 = (z.second * a2 + Cplx(b2)) / (z.second * c2 + Cplx(d2));
        return {w1, w2};
    }

    H2Function slash(H2Function f, const Mat2 &gamma, std::pair<int, int> k)
    {
        if (!gamma.is_unimodular())
            throw std::invalid_argument("slash: matrix must have determinant 1");
        Mat2 g = gamma;
        return [f = std::move(f), g, k](const H2Point &z) -> Cplx
        {
            auto [c1, c2] = g.c.embeddings();
            auto [d1, d2] = g.d.embeddings();
            Cplx j1 = z.first * c1 + Cplx(d1);
            Cplx j2 = z.second * c2 + Cplx(d2);
            if (j1.is_zero() || j2.is_zero())
                throw std::domain_error("slash: automorphy factor vanished");
            return cpow_int(j1, -k.first) * cpow_int(j2, -k.second) *
                   f(apply_moebius(g, z));
        };
    }

    std::vector<FieldElement> box_elements(const Field &f, long radius)
    {
        if (radius <= 0)
            throw std::invalid_argument("box_elements: radius must be positive");
        auto [w1r, w2r] = f.omega_embeddings();
        double w1 = w1r.convert_to<double>(), w2 = w2r.convert_to<double>();
        double R = static_cast<double>(radius);
        double gap = w1 - w2;
        long vmax = static_cast<long>(std::ceil(2 * R / gap)) + 1;
        FieldElement rad = f.from_integers(radius, 0);
        std::vector<FieldElement> out;
        for (long v = -vmax; v <= vmax; ++v)
        {
            double umid1 = -v * w1, umid2 = -v * w2;
            long ulo = static_cast<long>(std::floor(std::min(umid1 - R, umid2 - R))) - 1;
            long uhi = static_cast<long>(std::ceil(std::max(umid1 + R, umid2 + R))) + 1;
            for (long u = ulo; u <= uhi; ++u)
            {
                FieldElement x = f.from_integers(u, v);
                if ((rad - x).sign_embedding(1) < 0 || (rad + x).sign_embedding(1) < 0)
                    continue;
                if ((rad - x).sign_embedding(2) < 0 || (rad + x).sign_embedding(2) < 0)
                    continue;
                out.push_back(x);
            }
        }
        return out;
    }

    namespace
    {

        // |x^(1)| >= |x^(2)| decided exactly via the square
        int abs_gap_sign(const FieldElement &x)
        {
            return sgn((x * x).b());
        }

        // Scale x into the ratio domain 1 <= |x1/x2| < (eps0^(1))^2 by unit
        // powers; returns the exponent k with x*eps0^k in the domain.
        long ratio_domain_exponent(const FieldElement &x)
        {
            const Field &f = x.field();
            const FieldElement eps = f.fundamental_unit();
            const FieldElement eps_inv = eps.inverse();
            FieldElement cur = x;
            long k = 0;
            for (int guard = 0; guard < 100000; ++guard)
            {
                if (abs_gap_sign(cur) < 0)
                {
                    cur = cur * eps;
                    ++k;
                    continue;
                }
                if (abs_gap_sign(cur * eps_inv) >= 0)
                {
                    cur = cur * eps_inv;
                    --k;
                    continue;
                }
                return k;
            }
            throw std::logic_error("ratio_domain_exponent: no convergence");
        }

        bool coprime_pair(const Field &f, const FieldElement &c, const FieldElement &d)
        {
            if (c.is_zero() && d.is_zero())
                return false;
            return IdealHNF::from_generators(f, {c, d}).is_unit_ideal();
        }

        // canonical representative of the pair class under the allowed unit
        // scalings; full unit group when subgroup_gen is empty
        std::string canonical_pair_key(const Field &f, FieldElement c, FieldElement d,
                                       const std::optional<FieldElement> &subgroup_gen,
                                       bool allow_negation)
        {
            const FieldElement &x = c.is_zero() ? d : c;
            if (!subgroup_gen)
            {
                long k = ratio_domain_exponent(x);
                FieldElement u = f.fundamental_unit().pow(k);
                c = c * u;
                d = d * u;
                if ((c.is_zero() ? d : c).sign_embedding(1) < 0)
                {
                    c = -c;
                    d = -d;
                }
            }
            else
            {
                // reduce by powers of the subgroup generator eta: land the
                // ratio in [1, (eta^(1))^2)
                const FieldElement &eta = *subgroup_gen;
                FieldElement eta_inv = eta.inverse();
                FieldElement y = x;
                FieldElement uc = f.one();
                for (int guard = 0; guard < 100000; ++guard)
                {
                    if (abs_gap_sign(y) < 0)
                    {
                        y = y * eta;
                        uc = uc * eta;
                        continue;
                    }
                    if (abs_gap_sign(y * eta_inv) >= 0)
                    {
                        y = y * eta_inv;
                        uc = uc * eta_inv;
                        continue;
                    }
                    break;
                }
                c = c * uc;
                d = d * uc;
                if (allow_negation && (c.is_zero() ? d : c).sign_embedding(1) < 0)
                {
                    c = -c;
                    d = -d;
                }
            }
            return c.to_string() + "|" + d.to_string();
        }

        // smallest positive power of eps0 (up to sign) congruent to 1 mod n;
        // also reports whether -1 = 1 mod n
        std::pair<FieldElement, bool> unit_subgroup_mod(const Field &f,
                                                        const IdealHNF &n)
        {
            const FieldElement eps = f.fundamental_unit();
            FieldElement one_r = n.reduce(f.one());
            bool neg_trivial = (n.reduce(-f.one()) == one_r);
            FieldElement p = eps;
            for (int k = 1; k < 100000; ++k)
            {
                FieldElement r = n.reduce(p);
                if (r == one_r)
                    return {p, neg_trivial};
                if (neg_trivial ? false : (n.reduce(-p) == one_r))
                    return {-p, neg_trivial};
                p = p * eps;
            }
            throw std::logic_error("unit_subgroup_mod: unit order not found");
        }

    } // namespace

    EisensteinSeries::EisensteinSeries(Field f, AutomorphyWeight k, LatticeSumSpec spec)
        : field_(std::move(f)), k_(k), spec_(std::move(spec))
    {
        if (!k_.parallel() || k_.k1 <= 2 || k_.k1 % 2 != 0)
            throw std::invalid_argument(
                "EisensteinSeries: weight must be parallel, even and > 2");
        std::optional<FieldElement> subgroup;
        bool allow_neg = true;
        if (spec_.level)
        {
            if (!spec_.level->is_integral())
                throw std::invalid_argument("EisensteinSeries: level must be integral");
            auto [eta, negtriv] = unit_subgroup_mod(field_, *spec_.level);
            subgroup = eta;
            allow_neg = negtriv;
        }

        std::vector<FieldElement> box = box_elements(field_, spec_.radius);
        std::sort(box.begin(), box.end());
        std::set<std::string> seen;
        FieldElement one = field_.one();
        for (const FieldElement &c : box)
        {
            if (spec_.level && !spec_.level->contains(c))
                continue;
            for (const FieldElement &d : box)
            {
                if (c.is_zero() && d.is_zero())
                    continue;
                if (spec_.level && !spec_.level->contains(d - one))
                    continue;
                if (!coprime_pair(field_, c, d))
                    continue;
                std::string key = canonical_pair_key(field_, c, d, subgroup, allow_neg);
                if (seen.insert(key).second)
                    pairs_.emplace_back(c, d);
            }
        }
    }

    void EisensteinSeries::refresh_embeddings() const
    {
        if (cached_bits_ == precision_bits())
            return;
        c1_.clear();
        c2_.clear();
        d1_.clear();
        d2_.clear();
        c1_.reserve(pairs_.size());
        for (const auto &[c, d] : pairs_)
        {
            auto [x1, x2] = c.embeddings();
            auto [y1, y2] = d.embeddings();
            c1_.push_back(x1);
            c2_.push_back(x2);
            d1_.push_back(y1);
            d2_.push_back(y2);
        }
        cached_bits_ = precision_bits();
    }

    Cplx EisensteinSeries::value(const H2Point &z) const
    {
        if (z.first.im <= 0 || z.second.im <= 0)
            throw std::domain_error("EisensteinSeries::value: point not in H^2");
        refresh_embeddings();
        Cplx acc;
        const long k = k_.k1;
        for (size_t i = 0; i < pairs_.size(); ++i)
        {
            Cplx j1 = z.first * c1_[i] + Cplx(d1_[i]);
            Cplx j2 = z.second * c2_[i] + Cplx(d2_[i]);
            acc += cpow_int(j1 * j2, -k);
        }
        return acc;
    }

    H2Function EisensteinSeries::as_function() const
    {
        const EisensteinSeries *self = this;
        return [self](const H2Point &z)
        { return self->value(z); };
    }

    std::pair<FieldElement, FieldElement> bezout_pair(const FieldElement &c,
                                                      const FieldElement &d)
    {
        const Field &f = c.field().valid() ? c.field() : d.field();
        if (!c.is_integral() || !d.is_integral())
            throw std::invalid_argument("bezout_pair: entries must be integral");
        // integer combination of d, wd, -c, -wc equal to 1
        struct TV
        {
            mpz_class x, y;
            std::array<mpz_class, 4> t;
        };
        FieldElement gens[4] = {d, f.omega() * d, -c, -(f.omega() * c)};
        std::vector<TV> vecs;
        for (int i = 0; i < 4; ++i)
        {
            TV v;
            v.x = gens[i].a().get_num();
            v.y = gens[i].b().get_num();
            v.t[i] = 1;
            vecs.push_back(v);
        }
        // reduce y-coordinates to a single vector w with y = gcd
        TV w;
        w.x = 0;
        w.y = 0;
        for (auto &v : vecs)
        {
            if (v.y == 0)
                continue;
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                       w.y.get_mpz_t(), v.y.get_mpz_t());
            TV nw;
            nw.x = s * w.x + t * v.x;
            nw.y = g;
            for (int i = 0; i < 4; ++i)
                nw.t[i] = s * w.t[i] + t * v.t[i];
            w = nw;
        }
        // clear y's, gcd the x's
        TV u;
        u.x = 0;
        u.y = 0;
        for (auto &v : vecs)
        {
            TV r = v;
            if (w.y != 0)
            {
                mpz_class q = v.y / w.y;
                r.x = v.x - q * w.x;
                r.y = 0;
                for (int i = 0; i < 4; ++i)
                    r.t[i] = v.t[i] - q * w.t[i];
            }
            if (r.x == 0)
                continue;
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                       u.x.get_mpz_t(), r.x.get_mpz_t());
            TV nu;
            nu.x = g;
            nu.y = 0;
            for (int i = 0; i < 4; ++i)
                nu.t[i] = s * u.t[i] + t * r.t[i];
            u = nu;
        }
        // (1, 0) = p*u + q*w with q*w.y = 0 forcing q = 0; need u.x = 1
        if (u.x != 1)
            throw std::invalid_argument("bezout_pair: pair is not coprime");
        FieldElement a = f.element(mpq_class(u.t[0]), mpq_class(u.t[1]));
        FieldElement b = f.element(mpq_class(u.t[2]), mpq_class(u.t[3]));
        if (!(a * d - b * c).is_one())
            throw std::logic_error("bezout_pair: verification failed");
        return {a, b};
    }

    PoincareSeries::PoincareSeries(Field f, FieldElement nu, AutomorphyWeight k,
                                   LatticeSumSpec spec)
        : field_(std::move(f)), nu_(std::move(nu)), k_(k), spec_(std::move(spec))
    {
        if (k_.k1 <= 2 || k_.k2 <= 2)
            throw std::invalid_argument("PoincareSeries: weights must be > 2");
        TranslationModule dual = TranslationModule::ring_of_integers(field_).dual();
        if (!dual.contains(nu_))
            throw std::invalid_argument("PoincareSeries: nu outside the dual lattice");
        if (!nu_.is_totally_positive())
            throw std::invalid_argument("PoincareSeries: nu must be totally positive");

        std::vector<FieldElement> box = box_elements(field_, spec_.radius);
        std::sort(box.begin(), box.end());
        for (const FieldElement &c : box)
        {
            if (spec_.level && !spec_.level->contains(c))
                continue;
            for (const FieldElement &d : box)
            {
                if (c.is_zero() && d.is_zero())
                    continue;
                if (spec_.level && !spec_.level->contains(d - field_.one()))
                    continue;
                if (!coprime_pair(field_, c, d))
                    continue;
                auto [a, b] = bezout_pair(c, d);
                rows_.push_back({a, b, c, d});
            }
        }
    }

    void PoincareSeries::refresh_embeddings() const
    {
        if (cached_bits_ == precision_bits())
            return;
        a1_.clear();
        a2_.clear();
        b1_.clear();
        b2_.clear();
        c1_.clear();
        c2_.clear();
        d1_.clear();
        d2_.clear();
        for (const auto &r : rows_)
        {
            auto [x1, x2] = r.a.embeddings();
            a1_.push_back(x1);
            a2_.push_back(x2);
            auto [y1, y2] = r.b.embeddings();
            b1_.push_back(y1);
            b2_.push_back(y2);
            auto [u1, u2] = r.c.embeddings();
            c1_.push_back(u1);
            c2_.push_back(u2);
            auto [v1, v2] = r.d.embeddings();
            d1_.push_back(v1);
            d2_.push_back(v2);
        }
        auto [n1, n2] = nu_.embeddings();
        n1_ = n1;
        n2_ = n2;
        cached_bits_ = precision_bits();
    }

    Cplx PoincareSeries::value(const H2Point &z) const
    {
        if (z.first.im <= 0 || z.second.im <= 0)
            throw std::domain_error("PoincareSeries::value: point not in H^2");
        refresh_embeddings();
        Real twopi = 2 * pi_value();
        Cplx acc;
        for (size_t i = 0; i < rows_.size(); ++i)
        {
            Cplx j1 = z.first * c1_[i] + Cplx(d1_[i]);
            Cplx j2 = z.second * c2_[i] + Cplx(d2_[i]);
            Cplx g1 = (z.first * a1_[i] + Cplx(b1_[i])) / j1;
            Cplx g2 = (z.second * a2_[i] + Cplx(b2_[i])) / j2;
            // e^{2 pi i (nu1 g1 + nu2 g2)}
            Cplx ip = g1 * n1_ + g2 * n2_;
            Cplx phase = cexp(Cplx(-twopi * ip.im, twopi * ip.re));
            acc += cpow_int(j1, -k_.k1) * cpow_int(j2, -k_.k2) * phase;
        }
        return acc;
    }

    H2Function PoincareSeries::as_function() const
    {
        const PoincareSeries *self = this;
        return [self](const H2Point &z)
        { return self->value(z); };
    }

    CuspProbeResult cusp_limit_probe(const H2Function &f, const std::vector<Real> &ts)
    {
        if (ts.size() < 2)
            throw std::invalid_argument("cusp_limit_probe: need at least two t values");
        CuspProbeResult out;
        out.ts = ts;
        for (const Real &t : ts)
        {
            if (t <= 0)
                throw std::domain_error("cusp_limit_probe: t must be positive");
            out.values.push_back(f({Cplx(Real(0), t), Cplx(Real(0), t)}));
        }
        out.limit = out.values.back();
        Real first_delta = (out.values[1] - out.values[0]).abs();
        Real last_delta =
            (out.values.back() - out.values[out.values.size() - 2]).abs();
        out.converged = (last_delta <= first_delta);
        return out;
    }

} // namespace hmf
