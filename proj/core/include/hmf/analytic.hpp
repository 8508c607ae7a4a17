#pragma once

#include "hmf/fourier.hpp"

#include <optional>
#include <vector>

namespace hmf
{

    /// Weight vector for H^2 series; construction validates the constraints.
    struct AutomorphyWeight
    {
        int k1 = 4, k2 = 4;

        bool parallel() const { return k1 == k2; }
        // parallel, even, > 2 (Eisenstein convergence regime)
        static AutomorphyWeight eisenstein(int k);
        // all entries > 2 (Poincare convergence regime)
        static AutomorphyWeight poincare(int k1, int k2);
        std::pair<int, int> pair() const { return {k1, k2}; }
    };

    /**
     * Truncation and coset-filter data for lattice sums.  radius bounds
     * max(|c^(j)|, |d^(j)|) over both embeddings.  With a level ideal, only
     * pairs with c in n and d = 1 mod n enter the sum and unit deduplication
     * uses the units congruent to 1 mod n.
     */
    struct LatticeSumSpec
    {
        long radius = 12;
        std::optional<IdealHNF> level;
    };

    H2Point apply_moebius(const Mat2 &gamma, const H2Point &z);

    // Weight-k slash action (f|_k gamma)(z) = prod_j (c_j z_j + d_j)^{-k_j} f(gamma z).
    H2Function slash(H2Function f, const Mat2 &gamma, std::pair<int, int> k);

    // Solve a*d - b*c = 1 for integral coprime (c, d).
    std::pair<FieldElement, FieldElement> bezout_pair(const FieldElement &c,
                                                      const FieldElement &d);

    /**
     * Weight-k Eisenstein series at the cusp infinity: the sum over coprime
     * bottom rows (c, d), one representative per unit-scaling class, of
     * prod_j (c^(j) z_j + d^(j))^{-k}.  The coset list is enumerated exactly
     * once per spec; evaluation reuses embedded rows.
     */
    class EisensteinSeries
    {
    public:
        EisensteinSeries(Field f, AutomorphyWeight k, LatticeSumSpec spec);

        Cplx value(const H2Point &z) const;
        H2Function as_function() const;
        size_t term_count() const { return pairs_.size(); }
        const LatticeSumSpec &spec() const { return spec_; }
        const Field &field() const { return field_; }
        AutomorphyWeight weight() const { return k_; }

    private:
        Field field_;
        AutomorphyWeight k_;
        LatticeSumSpec spec_;
        std::vector<std::pair<FieldElement, FieldElement>> pairs_;

        mutable unsigned cached_bits_ = 0;
        mutable std::vector<Real> c1_, c2_, d1_, d2_;
        void refresh_embeddings() const;
    };

    /**
     * Poincare series P_nu of weight k (all k_j > 2) for the full Hilbert
     * modular group: sum over representatives of Gamma_inf \ Gamma, i.e. all
     * coprime bottom rows completed to unimodular matrices, of
     * prod_j (c_j z_j + d_j)^{-k_j} e^{2 pi i <nu, gamma z>}.
     * nu must be a totally positive point of the dual lattice of O_F.
     */
    class PoincareSeries
    {
    public:
        PoincareSeries(Field f, FieldElement nu, AutomorphyWeight k,
                       LatticeSumSpec spec);

        Cplx value(const H2Point &z) const;
        H2Function as_function() const;
        size_t term_count() const { return rows_.size(); }
        const FieldElement &nu() const { return nu_; }

    private:
        Field field_;
        FieldElement nu_;
        AutomorphyWeight k_;
        LatticeSumSpec spec_;
        struct Row
        {
            FieldElement a, b, c, d;
        };
        std::vector<Row> rows_;

        mutable unsigned cached_bits_ = 0;
        mutable std::vector<Real> a1_, a2_, b1_, b2_, c1_, c2_, d1_, d2_;
        mutable Real n1_, n2_;
        void refresh_embeddings() const;
    };

    struct CuspProbeResult
    {
        std::vector<Real> ts;
        std::vector<Cplx> values;
        Cplx limit;          // value at the largest t
        bool converged;      // successive deltas shrink
    };

    // Evaluate f along z = (i t, i t) for the given increasing t sequence and
    // report the fitted constant term at the cusp infinity.
    CuspProbeResult cusp_limit_probe(const H2Function &f,
                                     const std::vector<Real> &ts);

    // Elements x of O_F with |x^(1)| <= radius and |x^(2)| <= radius (exact
    // box test), in a fixed deterministic order; includes zero.
    std::vector<FieldElement> box_elements(const Field &f, long radius);

} // namespace hmf
