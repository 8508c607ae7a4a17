#include "hmf/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmf
{

    namespace
    {
        // sign of xi^(1) - xi^(2), exactly
        int embedding_gap_sign(const FieldElement &xi)
        {
            return sgn(xi.b());
        }
    } // namespace

    bool in_unit_fundamental_domain(const FieldElement &xi)
    {
        if (!xi.is_totally_positive())
            throw std::invalid_argument(
                "in_unit_fundamental_domain: xi must be totally positive");
        if (embedding_gap_sign(xi) < 0) // xi1 < xi2, ratio < 1
            return false;
        // ratio < eps_+^2  <=>  (xi * conj(eps_+))^(1) < (xi * conj(eps_+))^(2)
        FieldElement z = xi * xi.field().totally_positive_unit().conj();
        return embedding_gap_sign(z) < 0;
    }

    FieldElement unit_orbit_representative(const FieldElement &xi)
    {
        if (!xi.is_totally_positive())
            throw std::invalid_argument(
                "unit_orbit_representative: xi must be totally positive");
        const FieldElement eps = xi.field().totally_positive_unit();
        const FieldElement eps_inv = eps.inverse();
        FieldElement cur = xi;
        for (int guard = 0; guard < 100000; ++guard)
        {
            if (embedding_gap_sign(cur) < 0)
            {
                cur = cur * eps;
                continue;
            }
            if (embedding_gap_sign(cur * eps.conj()) >= 0)
            {
                cur = cur * eps_inv;
                continue;
            }
            return cur;
        }
        throw std::logic_error("unit_orbit_representative: reduction did not terminate");
    }

    std::vector<FieldElement> enumerate_totally_positive(
        const TranslationModule &lattice, const mpq_class &trace_bound,
        bool mod_units)
    {
        std::vector<FieldElement> out;
        if (trace_bound <= 0)
            return out;
        auto [e1, e2] = lattice.basis();
        double a11 = e1.embedding(1).convert_to<double>();
        double a21 = e1.embedding(2).convert_to<double>();
        double a12 = e2.embedding(1).convert_to<double>();
        double a22 = e2.embedding(2).convert_to<double>();
        double det = a11 * a22 - a12 * a21;
        double T = mpq_class(trace_bound).get_d();
        // (m, n) ranges from the preimage of the box (0, T)^2
        double mmin = 0, mmax = 0, nmin = 0, nmax = 0;
        for (double x1 : {0.0, T})
            for (double x2 : {0.0, T})
            {
                double m = (a22 * x1 - a12 * x2) / det;
                double n = (-a21 * x1 + a11 * x2) / det;
                mmin = std::min(mmin, m);
                mmax = std::max(mmax, m);
                nmin = std::min(nmin, n);
                nmax = std::max(nmax, n);
            }
        long mlo = static_cast<long>(std::floor(mmin)) - 1;
        long mhi = static_cast<long>(std::ceil(mmax)) + 1;
        long nlo = static_cast<long>(std::floor(nmin)) - 1;
        long nhi = static_cast<long>(std::ceil(nmax)) + 1;
        for (long m = mlo; m <= mhi; ++m)
            for (long n = nlo; n <= nhi; ++n)
            {
                if (m == 0 && n == 0)
                    continue;
                FieldElement xi = e1 * mpq_class(m) + e2 * mpq_class(n);
                if (!xi.is_totally_positive())
                    continue;
                if (xi.trace() > trace_bound)
                    continue;
                out.push_back(xi);
            }
        auto trace_order = [](const FieldElement &x, const FieldElement &y)
        {
            int c = cmp(x.trace(), y.trace());
            if (c != 0)
                return c < 0;
            return x < y;
        };
        std::sort(out.begin(), out.end(), trace_order);
        if (!mod_units)
            return out;
        // One point per unit orbit: the fundamental-domain representative
        // when it lies within the trace bound, else the minimal-trace member
        // (so every orbit meeting the bound is represented exactly once).
        std::map<FieldElement, FieldElement> chosen; // orbit id -> representative
        for (const auto &xi : out)
        {
            FieldElement id = unit_orbit_representative(xi);
            auto it = chosen.find(id);
            if (it == chosen.end())
                chosen.emplace(id, xi == id ? id : xi);
            else if (xi == id)
                it->second = id;
        }
        std::vector<FieldElement> reps;
        reps.reserve(chosen.size());
        for (auto &[id, xi] : chosen)
            reps.push_back(xi);
        std::sort(reps.begin(), reps.end(), trace_order);
        return reps;
    }

    Cplx inner_product(const FieldElement &nu, const H2Point &z)
    {
        auto [n1, n2] = nu.embeddings();
        return z.first * n1 + z.second * n2;
    }

    FourierSeries::FourierSeries(TranslationModule lattice,
                                 std::pair<int, int> weight,
                                 std::map<FieldElement, Cplx> coefficients,
                                 KoecherPolicy policy)
        : lat_(std::move(lattice)), weight_(weight)
    {
        TranslationModule dual = lat_.dual();
        for (auto &[nu, a] : coefficients)
        {
            if (!dual.contains(nu))
                throw std::invalid_argument(
                    "FourierSeries: support point outside the dual lattice");
            if (nu.is_zero() || nu.is_totally_positive())
            {
                coeff_.emplace(nu, a);
                continue;
            }
            if (policy == KoecherPolicy::reject)
                throw std::invalid_argument(
                    "FourierSeries: Koecher violation: support at a point neither "
                    "totally positive nor zero");
            // filter: drop
        }
    }

    H2Function FourierSeries::as_function(const mpq_class &truncation) const
    {
        FourierSeries copy = *this;
        mpq_class trunc = truncation;
        return [copy, trunc](const H2Point &z)
        {
            return eval_series(copy, z, trunc).value;
        };
    }

    SeriesValue eval_series(const FourierSeries &f, const H2Point &z,
                            const mpq_class &truncation, const TailModel *tail)
    {
        if (z.first.im <= 0 || z.second.im <= 0)
            throw std::domain_error("eval_series: point not in H^2");
        Cplx acc;
        for (const auto &[nu, a] : f.coefficients())
        {
            if (nu.trace() > truncation)
                continue;
            // e^{2 pi i <nu, z>}
            Cplx ip = inner_product(nu, z);
            Cplx phase = cexp(Cplx(-2 * pi_value() * ip.im, 2 * pi_value() * ip.re));
            acc += a * phase;
        }
        SeriesValue out{acc, Real(0)};
        if (tail)
        {
            // heuristic: lattice points of trace near t are O(t); terms decay
            // like e^{-2 pi ymin t}
            Real ymin = (z.first.im < z.second.im) ? z.first.im : z.second.im;
            Real rho = 8 / f.lattice().covolume() + 1;
            Real T = to_real(truncation);
            Real bound(0);
            for (int j = 1; j <= 400; ++j)
            {
                Real t = T + j;
                Real term = tail->kappa * (1 + rho * t) *
                            pow(1 + t, tail->growth) * exp(-2 * pi_value() * ymin * t);
                bound += term;
                if (term < bound * Real(1e-30))
                    break;
            }
            out.tail_bound = bound;
        }
        return out;
    }

    QuadratureValue numeric_fourier_coefficient(const H2Function &g,
                                                const TranslationModule &lattice,
                                                const FieldElement &nu,
                                                const std::pair<Real, Real> &y,
                                                long grid)
    {
        if (grid < 2 || grid % 2 != 0)
            throw std::invalid_argument("numeric_fourier_coefficient: grid must be even and >= 2");
        if (y.first <= 0 || y.second <= 0)
            throw std::domain_error("numeric_fourier_coefficient: y must be totally positive");
        auto [e1, e2] = lattice.basis();
        Real b11 = e1.embedding(1), b21 = e1.embedding(2);
        Real b12 = e2.embedding(1), b22 = e2.embedding(2);
        auto [n1, n2] = nu.embeddings();
        Real two_pi = 2 * pi_value();
        // e^{-2 pi i <nu, i y>} = e^{2 pi <nu, y>} is constant over the grid
        Real ymag = exp(two_pi * (n1 * y.first + n2 * y.second));

        auto sum_at = [&](long n) -> Cplx
        {
            Cplx acc;
            for (long j = 0; j < n; ++j)
                for (long k = 0; k < n; ++k)
                {
                    Real s = Real(j) / n, t = Real(k) / n;
                    Real x1 = s * b11 + t * b12;
                    Real x2 = s * b21 + t * b22;
                    H2Point z{Cplx(x1, y.first), Cplx(x2, y.second)};
                    Real phi = -two_pi * (n1 * x1 + n2 * x2);
                    acc += g(z) * Cplx(cos(phi), sin(phi));
                }
            return acc / Real(n * n);
        };

        Cplx full = sum_at(grid) * ymag;
        Cplx half = sum_at(grid / 2) * ymag;
        return {full, (full - half).abs()};
    }

} // namespace hmf
