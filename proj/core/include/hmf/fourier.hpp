#pragma once

#include "hmf/ideals.hpp"
#include "hmf/numeric.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace hmf
{

    /**
     * Rank-2 lattice in R^2: a fractional ideal of F embedded by the two real
     * embeddings.  covolume = N(ideal) * sqrt(disc).
     */
    class TranslationModule
    {
    public:
        explicit TranslationModule(IdealHNF lattice) : lat_(std::move(lattice)) {}

        static TranslationModule ring_of_integers(const Field &f)
        {
            return TranslationModule(IdealHNF::unit_ideal(f));
        }

        const IdealHNF &ideal() const { return lat_; }
        const Field &field() const { return lat_.field(); }
        std::pair<FieldElement, FieldElement> basis() const { return lat_.basis(); }
        Real covolume() const
        {
            return to_real(lat_.norm()) * sqrt(Real(field().disc()));
        }
        bool contains(const FieldElement &x) const { return lat_.contains(x); }

        // Trace-pairing dual: for t = a (a fractional ideal) the dual is
        // a^-1 * different^-1; in particular dual(O_F) = different^-1.
        TranslationModule dual() const
        {
            return TranslationModule(lat_.inverse() * different_ideal(field()).inverse());
        }

        bool operator==(const TranslationModule &o) const { return lat_ == o.lat_; }

    private:
        IdealHNF lat_;
    };

    // Exact membership in the half-open unit fundamental domain
    // 1 <= xi^(1)/xi^(2) < eps_+^2 (xi totally positive).
    bool in_unit_fundamental_domain(const FieldElement &xi);
    FieldElement unit_orbit_representative(const FieldElement &xi);

    /**
     * All totally positive lattice points with trace <= trace_bound (zero is
     * never included).  With mod_units, exactly one representative per orbit
     * of the totally positive unit group, selected by the half-open
     * fundamental domain above.  Output sorted by (trace, a, b).
     */
    std::vector<FieldElement> enumerate_totally_positive(
        const TranslationModule &lattice, const mpq_class &trace_bound,
        bool mod_units);

    using H2Point = std::pair<Cplx, Cplx>;
    using H2Function = std::function<Cplx(const H2Point &)>;

    // <nu, z> = nu^(1) z_1 + nu^(2) z_2
    Cplx inner_product(const FieldElement &nu, const H2Point &z);

    /**
     * Finitely supported Fourier series sum_nu A(nu) e^{2 pi i <nu, z>} on H^2
     * with support in the dual lattice of its translation module.  The Koecher
     * constraint (A(nu) = 0 unless nu totally positive or zero) is enforced at
     * construction: reject throws on violating support, filter drops it.
     */
    class FourierSeries
    {
    public:
        enum class KoecherPolicy
        {
            reject,
            filter
        };

        FourierSeries(TranslationModule lattice, std::pair<int, int> weight,
                      std::map<FieldElement, Cplx> coefficients,
                      KoecherPolicy policy = KoecherPolicy::reject);

        const TranslationModule &lattice() const { return lat_; }
        std::pair<int, int> weight() const { return weight_; }
        const std::map<FieldElement, Cplx> &coefficients() const { return coeff_; }

        H2Function as_function(const mpq_class &truncation) const;

    private:
        TranslationModule lat_;
        std::pair<int, int> weight_;
        std::map<FieldElement, Cplx> coeff_;
    };

    struct SeriesValue
    {
        Cplx value;
        Real tail_bound; // crude caller-declared model; 0 when no model given
    };

    // Declared decay for omitted terms: |A(nu)| <= kappa * (1 + trace(nu))^growth.
    struct TailModel
    {
        Real kappa;
        int growth = 0;
    };

    SeriesValue eval_series(const FourierSeries &f, const H2Point &z,
                            const mpq_class &truncation,
                            const TailModel *tail = nullptr);

    struct QuadratureValue
    {
        Cplx value;             // at the requested grid
        Real grid_disagreement; // |value - value at half resolution|
    };

    /**
     * Trapezoidal approximation of the normalized period integral of g against
     * e^{-2 pi i <nu, x + i y>} over R^2 / lattice at fixed totally positive y.
     * grid must be even (the half-resolution check reuses its points).
     */
    QuadratureValue numeric_fourier_coefficient(const H2Function &g,
                                                const TranslationModule &lattice,
                                                const FieldElement &nu,
                                                const std::pair<Real, Real> &y,
                                                long grid);

} // namespace hmf
