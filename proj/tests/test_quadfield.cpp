#include "doctest.h"

#include "hmf/quadfield.hpp"

#include <random>
#include <vector>

using namespace hmf;

namespace
{

    // Oracle: locate each root of the monic quadratic x^2 - tr*x + nm by
    // bisection on double intervals, independent of the embeddings() path.
    double bisect_root(double tr, double nm, double lo, double hi)
    {
        auto f = [&](double x)
        { return x * x - tr * x + nm; };
        for (int i = 0; i < 200; ++i)
        {
            double mid = (lo + hi) / 2;
            if ((f(lo) <= 0) == (f(mid) <= 0))
                lo = mid;
            else
                hi = mid;
        }
        return (lo + hi) / 2;
    }

    FieldElement random_element(const Field &f, std::mt19937_64 &rng, long range = 20)
    {
        std::uniform_int_distribution<long> num(-range, range);
        std::uniform_int_distribution<long> den(1, 6);
        return f.element(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
    }

} // namespace

TEST_CASE("make_field conventions")
{
    set_precision_bits(128);
    Field f5 = Field::make(5);
    CHECK(f5.disc() == 5);
    CHECK(f5.omega_is_half());

    Field f2 = Field::make(2);
    CHECK(f2.disc() == 8);
    CHECK_FALSE(f2.omega_is_half());

    CHECK_THROWS_AS(Field::make(12), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(1), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(-3), std::invalid_argument);

    CHECK(f5.to_string() == "Q(sqrt 5)");
    CHECK(Field::parse("Q(sqrt 5)") == f5);
}

TEST_CASE("embeddings of omega and ring homomorphism property")
{
    set_precision_bits(128);
    Field f5 = Field::make(5);
    auto [w1, w2] = f5.omega().embeddings();
    CHECK(std::abs(w1.convert_to<double>() - 1.6180339887) < 1e-9);
    CHECK(std::abs(w2.convert_to<double>() + 0.6180339887) < 1e-9);

    auto [o1, o2] = f5.one().embeddings();
    CHECK(o1 == 1);
    CHECK(o2 == 1);

    // 3 + 2w against bisection oracle
    FieldElement x = f5.from_integers(3, 2);
    double r1 = bisect_root(1, -1, 0.0, 4.0);   // positive root of x^2-x-1
    double r2 = bisect_root(1, -1, -4.0, 0.0);  // negative root
    auto [x1, x2] = x.embeddings();
    CHECK(std::abs(x1.convert_to<double>() - (3 + 2 * r1)) < 1e-12);
    CHECK(std::abs(x2.convert_to<double>() - (3 + 2 * r2)) < 1e-12);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i)
    {
        FieldElement a = random_element(f5, rng), b = random_element(f5, rng);
        auto [s1, s2] = (a + b).embeddings();
        auto [p1, p2] = (a * b).embeddings();
        auto [a1, a2] = a.embeddings();
        auto [b1, b2] = b.embeddings();
        CHECK(abs(s1 - (a1 + b1)).convert_to<double>() < 1e-10);
        CHECK(abs(s2 - (a2 + b2)).convert_to<double>() < 1e-10);
        CHECK(abs(p1 - a1 * b1).convert_to<double>() <
              1e-10 * (1 + abs(a1 * b1).convert_to<double>()));
        CHECK(abs(p2 - a2 * b2).convert_to<double>() <
              1e-10 * (1 + abs(a2 * b2).convert_to<double>()));
    }
}

TEST_CASE("norm and trace: exact values and multiplicativity")
{
    Field f5 = Field::make(5);
    CHECK(f5.omega().norm() == -1);
    CHECK(f5.omega().trace() == 1);
    CHECK(f5.from_integers(2, 0).norm() == 4);
    CHECK(f5.from_integers(2, 0).trace() == 4);
    // (3+w)(3+conj w) multiplied out: 9 + 3*1 - 1 = 11
    FieldElement y = f5.from_integers(3, 1);
    CHECK((y * y.conj()).a() == 11);
    CHECK((y * y.conj()).b() == 0);
    CHECK(y.norm() == 11);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i)
    {
        FieldElement a = random_element(f5, rng), b = random_element(f5, rng);
        CHECK(a.norm() * b.norm() == (a * b).norm());
        CHECK(a.trace() + b.trace() == (a + b).trace());
    }
}

TEST_CASE("fundamental units against brute-force box oracle")
{
    for (long d : {5L, 2L, 10L, 3L, 13L})
    {
        Field f = Field::make(d);
        // oracle: scan |a|,|b| <= 50, keep smallest unit > 1 under embedding 1
        std::vector<FieldElement> units;
        for (long a = -50; a <= 50; ++a)
            for (long b = -50; b <= 50; ++b)
            {
                FieldElement x = f.from_integers(a, b);
                if (abs(x.norm()) == 1 && (x - f.one()).sign_embedding(1) > 0)
                    units.push_back(x);
            }
        REQUIRE(!units.empty());
        FieldElement best = units[0];
        for (const auto &u : units)
            if ((u - best).sign_embedding(1) < 0)
                best = u;
        CHECK(f.fundamental_unit() == best);
        CHECK(abs(f.fundamental_unit().norm()) == 1);
    }

    Field f5 = Field::make(5);
    CHECK(f5.fundamental_unit() == f5.omega());
    Field f2 = Field::make(2);
    CHECK(f2.fundamental_unit() == f2.from_integers(1, 1)); // 1 + sqrt 2
    Field f10 = Field::make(10);
    CHECK(f10.fundamental_unit() == f10.from_integers(3, 1)); // 3 + sqrt 10

    // tiny box exhausts
    Field tiny = Field::make(94, 2); // eps0 = 2143295 + 221064*sqrt(94)
    CHECK_THROWS_AS(tiny.fundamental_unit(), std::domain_error);
}

TEST_CASE("total positivity is exact")
{
    Field f5 = Field::make(5);
    CHECK_FALSE(f5.omega().is_totally_positive()); // second embedding < 0
    CHECK(f5.from_integers(2, 1).is_totally_positive());
    CHECK_FALSE(f5.zero().is_totally_positive());
    CHECK(f5.zero().sign_embedding(1) == 0);

    // Nm(w) = -1 forces squaring
    CHECK(f5.totally_positive_unit() == f5.from_integers(1, 1)); // w^2 = 1 + w
    CHECK(f5.totally_positive_unit().is_totally_positive());

    std::mt19937_64 rng(3);
    FieldElement eps = f5.fundamental_unit();
    for (int i = 0; i < 100; ++i)
    {
        FieldElement x = random_element(f5, rng);
        if (x.is_zero())
            continue;
        FieldElement y = x * eps * eps;
        CHECK(x.is_totally_positive() == y.is_totally_positive());
        // sign of each embedding matches the numeric sign
        auto [e1, e2] = x.embeddings();
        if (abs(e1) > 1e-20)
            CHECK(x.sign_embedding(1) == (e1 > 0 ? 1 : -1));
        if (abs(e2) > 1e-20)
            CHECK(x.sign_embedding(2) == (e2 > 0 ? 1 : -1));
    }
}

TEST_CASE("field arithmetic identities")
{
    Field f13 = Field::make(13);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i)
    {
        FieldElement a = random_element(f13, rng);
        if (a.is_zero())
            continue;
        CHECK(a * a.inverse() == f13.one());
        CHECK(a.pow(3) == a * a * a);
        CHECK(a.pow(-2) == (a * a).inverse());
        CHECK(a.conj().conj() == a);
        CHECK((a + a.conj()).is_rational());
    }
}

TEST_CASE("element serialization round-trips")
{
    Field f5 = Field::make(5);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i)
    {
        FieldElement x = random_element(f5, rng);
        CHECK(FieldElement::parse(f5, x.to_string()) == x);
    }
    CHECK(FieldElement::parse(f5, "w") == f5.omega());
    CHECK(FieldElement::parse(f5, "1-w") == f5.from_integers(1, -1));
    CHECK(FieldElement::parse(f5, "-3/2 + 5*w") == f5.element(mpq_class(-3, 2), 5));
    CHECK(FieldElement::parse(f5, "0") == f5.zero());
    CHECK_THROWS_AS(FieldElement::parse(f5, "2x"), std::invalid_argument);
}

TEST_CASE("Mat2 basics")
{
    Field f5 = Field::make(5);
    Mat2 s{f5.zero(), -f5.one(), f5.one(), f5.zero()};
    CHECK(s.is_unimodular());
    Mat2 t{f5.one(), f5.omega(), f5.zero(), f5.one()};
    Mat2 st = s * t;
    CHECK(st.is_unimodular());
    CHECK(st.inverse_unimodular() * st * Mat2::identity(f5) * st.inverse_unimodular() * st ==
          (st.inverse_unimodular() * st));
}
