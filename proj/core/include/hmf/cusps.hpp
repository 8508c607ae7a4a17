#pragma once

#include "hmf/ideals.hpp"

#include <random>
#include <string>
#include <vector>

namespace hmf
{

    /// Point [alpha : beta] of P^1(F); the pair is never (0, 0).
    struct Cusp
    {
        FieldElement alpha, beta;
    };

    Cusp make_cusp(const FieldElement &alpha, const FieldElement &beta);
    Cusp infinity_cusp(const Field &f); // [1 : 0]

    // Integral, content-free representative with a deterministic sign rule;
    // idempotent and stable under any rational rescaling of the input pair.
    Cusp normalize(const Cusp &k);

    // Equality in P^1(F): alpha*delta - beta*gamma = 0.
    bool same_cusp(const Cusp &x, const Cusp &y);

    // [alpha : beta] -> [a alpha + b beta : c alpha + d beta]; requires det = 1.
    Cusp act(const Mat2 &gamma, const Cusp &k);

    IdealHNF cusp_ideal(const Cusp &k); // alpha O_F + beta O_F
    int cusp_ideal_class(const ClassGroup &cls, const Cusp &k);

    /**
     * Exact Gamma_F(n)-invariant of a cusp: the ideal class of the pair
     * together with the orbit of the reduced pair (alpha, beta) mod n*t_j
     * under scaling by units of O_F reduced mod n.  The key is canonical
     * (lexicographically least orbit element), so equal keys are decidable
     * by string comparison.
     */
    struct CuspInvariant
    {
        int ideal_class = 0;
        std::string level_residue;
        std::string key() const;
    };

    CuspInvariant cusp_invariant(const ClassGroup &cls, const IdealHNF &level,
                                 const Cusp &k);

    struct CuspClassification
    {
        std::vector<int> class_of_input;   // class id per input cusp
        std::vector<std::string> keys;     // invariant key per class id
        // true when level = O_F, where the partition is the phi bijection
        // with ideal classes; otherwise the partition is invariant-based
        // (a lower bound on the number of cusp classes).
        bool exact = false;
        size_t class_count() const { return keys.size(); }
    };

    CuspClassification classify_cusps(const ClassGroup &cls, const IdealHNF &level,
                                      const std::vector<Cusp> &cusps);

    std::string cusp_to_string(const Cusp &k); // "alpha;beta", "inf" for [1:0]
    Cusp parse_cusp(const Field &f, const std::string &s);

    // Seeded samplers used by property tests and the CLI.
    FieldElement random_integral_element(const Field &f, std::mt19937_64 &rng,
                                         long range = 8);
    Cusp random_cusp(const Field &f, std::mt19937_64 &rng, long range = 8);
    // Random element of SL2(O_F) as a short word in elementary matrices.
    Mat2 random_gamma(const Field &f, std::mt19937_64 &rng, int words = 4);
    // Random element of the principal congruence subgroup Gamma_F(n)
    // (a word in elementary matrices with entries in n).
    Mat2 random_gamma_level(const Field &f, const IdealHNF &level,
                            std::mt19937_64 &rng, int words = 4);

} // namespace hmf
