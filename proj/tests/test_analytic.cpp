#include "doctest.h"

#include "hmf/analytic.hpp"
#include "hmf/cusps.hpp"

#include <random>

using namespace hmf;

namespace
{

    H2Point sample_point(std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.8, 1.6);
        return {Cplx(Real(re(rng)), Real(im(rng))),
                Cplx(Real(re(rng)), Real(im(rng)))};
    }

    double cdist(const Cplx &x, const Cplx &y)
    {
        return (x - y).abs().convert_to<double>();
    }

} // namespace

TEST_CASE("box_elements agrees with a double-precision scan")
{
    Field f5 = Field::make(5);
    auto box = box_elements(f5, 3);
    // brute force with floating filter plus exact confirmation
    size_t count = 0;
    for (long u = -15; u <= 15; ++u)
        for (long v = -15; v <= 15; ++v)
        {
            FieldElement x = f5.from_integers(u, v);
            auto [e1, e2] = x.embeddings();
            if (abs(e1) <= 3 && abs(e2) <= 3)
                ++count;
        }
    CHECK(box.size() == count);
    for (const auto &x : box)
    {
        auto [e1, e2] = x.embeddings();
        CHECK(abs(e1).convert_to<double>() <= 3.0 + 1e-12);
        CHECK(abs(e2).convert_to<double>() <= 3.0 + 1e-12);
    }
}

TEST_CASE("slash: special cases and the cocycle law")
{
    set_precision_bits(128);
    Field f5 = Field::make(5);
    std::mt19937_64 rng(211);

    // a holomorphic-ish test function built from exponentials
    H2Function f = [](const H2Point &z)
    {
        return cexp(Cplx(-z.first.im, z.first.re)) +
               cexp(Cplx(-2 * z.second.im, 2 * z.second.re)) * Cplx(Real(0), Real(1));
    };

    H2Point z = sample_point(rng);
    CHECK(cdist(slash(f, Mat2::identity(f5), {4, 4})(z), f(z)) < 1e-25);

    // translation: automorphy factor 1
    FieldElement a = f5.from_integers(1, 1);
    Mat2 t{f5.one(), a, f5.zero(), f5.one()};
    auto [a1, a2] = a.embeddings();
    H2Point zt{z.first + Cplx(a1), z.second + Cplx(a2)};
    CHECK(cdist(slash(f, t, {4, 4})(z), f(zt)) < 1e-25);

    CHECK_THROWS_AS(slash(f, Mat2{f5.one(), f5.zero(), f5.zero(), f5.from_integers(2, 0)}, {4, 4}),
                    std::invalid_argument);

    // cocycle (f|g)|h = f|(gh) on random samples
    for (int i = 0; i < 30; ++i)
    {
        Mat2 g = random_gamma(f5, rng), h = random_gamma(f5, rng);
        H2Point w = sample_point(rng);
        std::pair<int, int> k{4, 6};
        Cplx lhs = slash(slash(f, g, k), h, k)(w);
        Cplx rhs = slash(f, g * h, k)(w);
        CHECK(cdist(lhs, rhs) < 1e-10 * (1 + rhs.abs().convert_to<double>()));
    }
}

TEST_CASE("Eisenstein series: identity coset, self-convergence, weight checks")
{
    set_precision_bits(128);
    Field f5 = Field::make(5);

    CHECK_THROWS_AS(EisensteinSeries(f5, AutomorphyWeight{3, 3}, {4, {}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(EisensteinSeries(f5, AutomorphyWeight{2, 2}, {4, {}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(AutomorphyWeight::eisenstein(5), std::invalid_argument);

    H2Point z0{Cplx(Real(0), Real(1)), Cplx(Real(0), Real(1))};

    // Cauchy at z0 under radius doubling (no closed-form target)
    AutomorphyWeight k4 = AutomorphyWeight::eisenstein(4);
    Cplx e2 = EisensteinSeries(f5, k4, {2, {}}).value(z0);
    Cplx e4 = EisensteinSeries(f5, k4, {4, {}}).value(z0);
    Cplx e8 = EisensteinSeries(f5, k4, {8, {}}).value(z0);
    Cplx e16 = EisensteinSeries(f5, k4, {16, {}}).value(z0);
    double d1 = cdist(e4, e2), d2 = cdist(e8, e4), d3 = cdist(e16, e8);
    CHECK(d2 < d1);
    CHECK(d3 < d2);

    // at a very tall point the identity coset dominates: E ~ 1
    EisensteinSeries es(f5, k4, {6, {}});
    H2Point tall{Cplx(Real(0), Real(40)), Cplx(Real(0), Real(40))};
    CHECK(cdist(es.value(tall), Cplx(Real(1))) < 1e-3);
}

TEST_CASE("Eisenstein transformation law")
{
    set_precision_bits(128);
    Field f5 = Field::make(5);
    AutomorphyWeight k4 = AutomorphyWeight::eisenstein(4);
    EisensteinSeries es(f5, k4, {8, {}});
    EisensteinSeries es2(f5, k4, {16, {}});

    std::mt19937_64 rng(223);
    double worst_small = 0, worst_big = 0;
    for (int i = 0; i < 3; ++i)
    {
        Mat2 g = random_gamma(f5, rng, 3);
        for (int j = 0; j < 3; ++j)
        {
            H2Point z = sample_point(rng);
            Cplx direct = es.value(z);
            Cplx slashed = slash(es.as_function(), g, k4.pair())(z);
            double rel = cdist(direct, slashed) / (1e-30 + direct.abs().convert_to<double>());
            worst_small = std::max(worst_small, rel);

            Cplx direct2 = es2.value(z);
            Cplx slashed2 = slash(es2.as_function(), g, k4.pair())(z);
            double rel2 = cdist(direct2, slashed2) / (1e-30 + direct2.abs().convert_to<double>());
            worst_big = std::max(worst_big, rel2);
        }
    }
    CHECK(worst_small < 1e-3);
    CHECK(worst_big < worst_small); // residual shrinks as the radius doubles
}

TEST_CASE("level filter: series is Gamma(n)-invariant and keeps the identity term")
{
    set_precision_bits(128);
    Field f5 = Field::make(5);
    IdealHNF two = IdealHNF::from_rational(f5, 2);
    AutomorphyWeight k4 = AutomorphyWeight::eisenstein(4);
    EisensteinSeries es(f5, k4, {8, two});

    // identity coset survives the congruence filter
    H2Point tall{Cplx(Real(0), Real(40)), Cplx(Real(0), Real(40))};
    CHECK(cdist(es.value(tall), Cplx(Real(1))) < 1e-3);

    std::mt19937_64 rng(227);
    for (int i = 0; i < 2; ++i)
    {
        Mat2 g = random_gamma_level(f5, two, rng, 2);
        H2Point z = sample_point(rng);
        Cplx direct = es.value(z);
        Cplx slashed = slash(es.as_function(), g, k4.pair())(z);
        double rel = cdist(direct, slashed) / (1e-30 + direct.abs().convert_to<double>());
        CHECK(rel < 2e-2);
    }
}

TEST_CASE("bezout completion of coprime pairs")
{
    Field f5 = Field::make(5);
    std::mt19937_64 rng(229);
    int done = 0;
    while (done < 200)
    {
        FieldElement c = random_integral_element(f5, rng, 9);
        FieldElement d = random_integral_element(f5, rng, 9);
        if (c.is_zero() && d.is_zero())
            continue;
        if (!IdealHNF::from_generators(f5, {c, d}).is_unit_ideal())
        {
            CHECK_THROWS_AS(bezout_pair(c, d), std::invalid_argument);
            ++done;
            continue;
        }
        auto [a, b] = bezout_pair(c, d);
        CHECK((a * d - b * c).is_one());
        ++done;
    }
}

TEST_CASE("Poincare series: leading term, invariance, cusp decay")
{
    set_precision_bits(128);
    Field f5 = Field::make(5);
    // smallest totally positive dual vector: trace 1
    TranslationModule dual = TranslationModule::ring_of_integers(f5).dual();
    auto nus = enumerate_totally_positive(dual, 1, false);
    REQUIRE(!nus.empty());
    FieldElement nu = nus[0];
    CHECK(nu.trace() == 1);

    AutomorphyWeight k = AutomorphyWeight::poincare(4, 4);

    CHECK_THROWS_AS(PoincareSeries(f5, f5.one() - f5.omega(), k, {4, {}}),
                    std::invalid_argument); // not totally positive
    CHECK_THROWS_AS(PoincareSeries(f5, f5.element(mpq_class(1, 7), 0), k, {4, {}}),
                    std::invalid_argument); // outside the dual lattice

    PoincareSeries p(f5, nu, k, {6, {}});

    // at a tall point the identity coset dominates: P ~ e^{2 pi i <nu, z>}
    H2Point tall{Cplx(Real(0), Real(6)), Cplx(Real(0), Real(6))};
    Cplx ip = inner_product(nu, tall);
    Cplx lead = cexp(Cplx(-2 * pi_value() * ip.im, 2 * pi_value() * ip.re));
    CHECK(cdist(p.value(tall), lead) / lead.abs().convert_to<double>() < 1e-2);

    // invariance residual under a random group element
    std::mt19937_64 rng(233);
    Mat2 g = random_gamma(f5, rng, 3);
    H2Point z = sample_point(rng);
    Cplx direct = p.value(z);
    Cplx slashed = slash(p.as_function(), g, k.pair())(z);
    CHECK(cdist(direct, slashed) < 1e-3 * (1 + direct.abs().convert_to<double>()));

    // decay toward the cusp along z = (it, it)
    auto probe = cusp_limit_probe(p.as_function(), {Real(2), Real(4), Real(8)});
    CHECK(probe.values[1].abs() < probe.values[0].abs());
    CHECK(probe.values[2].abs() < probe.values[1].abs());
    CHECK(probe.values[2].abs().convert_to<double>() < 1e-3);
    CHECK(probe.converged);
}

TEST_CASE("cusp_limit_probe on constants and Eisenstein series")
{
    set_precision_bits(128);
    Field f5 = Field::make(5);
    H2Function c = [](const H2Point &)
    { return Cplx(Real(7), Real(-1)); };
    auto probe = cusp_limit_probe(c, {Real(1), Real(2), Real(4)});
    CHECK(cdist(probe.limit, Cplx(Real(7), Real(-1))) < 1e-30);
    CHECK(probe.converged);

    EisensteinSeries es(f5, AutomorphyWeight::eisenstein(4), {6, {}});
    auto ep = cusp_limit_probe(es.as_function(), {Real(2), Real(4), Real(8), Real(16)});
    CHECK(cdist(ep.limit, Cplx(Real(1))) < 1e-3); // identity-coset term survives
    CHECK(ep.converged);
}
