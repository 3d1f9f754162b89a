#include <gtest/gtest.h>

#include <random>

#include "sdlab/curve.hpp"

using namespace sdlab;

namespace {

double phase_of(double re, double im) { return std::atan2(im, re) / std::numbers::pi; }

// max over x of arccot((x - (2g-2))/H) - arccot(x/H), by brute force on a grid.
double shift_sup_by_grid(int g, double h) {
    double best = -1;
    for (long i = -100000; i <= 100000; ++i) {
        const double x = i * 1e-2;
        const double a = std::atan2(h, x - (2.0 * g - 2)), b = std::atan2(h, x);
        best = std::max(best, a - b);
    }
    return best;
}

// Largest phase gap over Hom and Ext^1 between line bundles O(a), O(b) on P^1
// and the skyscraper sheaves.
double genus0_oracle(double beta, double h, int cutoff) {
    auto phi = [&](int deg) { return phase_of(-deg + beta, h); };
    double best = 0;
    for (int a = -cutoff; a <= cutoff; ++a) {
        best = std::max({best, 1 - phi(a), phi(a)});
        for (int b = -cutoff; b <= cutoff; ++b) {
            if (b >= a) best = std::max(best, phi(b) - phi(a));
            if (b <= a - 2) best = std::max(best, 1 + phi(b) - phi(a));
        }
    }
    return best;
}

// Same on an elliptic curve at the level of classes (r, d) in the heart.
double genus1_oracle(double beta, double h, int cutoff) {
    struct C { long r, d; double phi; };
    std::vector<C> classes;
    for (long r = 0; r <= cutoff; ++r)
        for (long d = -cutoff; d <= cutoff; ++d)
            if (r > 0 || d > 0) classes.push_back({r, d, r == 0 ? 1.0 : phase_of(-d + beta * r, h * r)});
    double best = 0;
    for (const auto& e : classes)
        for (const auto& f : classes) {
            const long w = e.r * f.d - f.r * e.d;
            const bool same = e.r == f.r && e.d == f.d;
            if (w > 0 || same) best = std::max(best, f.phi - e.phi);
            if (w < 0 || same) best = std::max(best, 1 + f.phi - e.phi);
        }
    return best;
}

} // namespace

TEST(CurveCharge, Examples) {
    const CurveStability cs{2, 0, 1};
    const auto o = curve_charge(cs, {1, 0});
    EXPECT_EQ(o.z, std::complex<double>(0, 1));
    EXPECT_NEAR(o.phase, 0.5, 1e-15);
    const auto omega = curve_charge(cs, {1, 2});
    EXPECT_EQ(omega.z, std::complex<double>(-2, 1));
    EXPECT_NEAR(omega.phase, arccot(-2) / std::numbers::pi, 1e-15);
    EXPECT_NEAR(omega.phase, 0.8524, 1e-4);
    const auto torsion = curve_charge(cs, {0, 1});
    EXPECT_EQ(torsion.z, std::complex<double>(-1, 0));
    EXPECT_EQ(torsion.phase, 1.0);
}

TEST(CurveCharge, Errors) {
    EXPECT_THROW(curve_charge({2, 0, 1}, {0, 0}), ZeroClass);
    EXPECT_THROW(curve_charge({2, 0, 1}, {0, -1}), ConfigError);
    EXPECT_THROW(curve_charge({2, 0, 0}, {1, 0}), ConfigError);
}

TEST(CurveBounds, Examples) {
    const auto b = curve_gldim_bounds({2, 0, 1});
    EXPECT_NEAR(b.lower, 1 + (2.6779 - 1.5708) / std::numbers::pi, 1e-4);
    EXPECT_NEAR(b.lower, 1.3524, 1e-3);
    EXPECT_NEAR(b.upper, 1.5, 1e-12);
    const auto far = curve_gldim_bounds({2, 0, 1e6});
    EXPECT_NEAR(far.lower, 1, 1e-5);
    EXPECT_NEAR(far.upper, 1, 1e-5);
    EXPECT_GT(far.lower, 1);
    const auto g3 = curve_gldim_bounds({3, 1, 2});
    EXPECT_NEAR(g3.lower, 1 + (arccot(-1.5) - arccot(0.5)) / std::numbers::pi, 1e-12);
    EXPECT_NEAR(g3.upper, 1.5, 1e-12);
    EXPECT_THROW(curve_gldim_bounds({1, 0, 1}), GenusTooSmall);
}

TEST(CurveBounds, OrderedOnGrid) {
    for (int g : {2, 3, 5})
        for (int i = 0; i < 50; ++i)
            for (int j = 0; j < 50; ++j) {
                const double beta = -10 + 20.0 * i / 49, h = 0.05 + 20.0 * j / 49;
                const auto b = curve_gldim_bounds({g, beta, h});
                EXPECT_LE(b.lower, b.upper + 1e-12) << g << " " << beta << " " << h;
                EXPECT_GT(b.lower, 1) << g << " " << beta << " " << h;
            }
}

TEST(CurveBounds, UpperMatchesGridMaximisation) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> genus(2, 6);
    std::uniform_real_distribution<double> height(0.2, 20);
    for (int trial = 0; trial < 20; ++trial) {
        const int g = genus(rng);
        const double h = height(rng);
        const double oracle = 1 + shift_sup_by_grid(g, h) / std::numbers::pi;
        EXPECT_NEAR(curve_gldim_bounds({g, 0, h}).upper, oracle, 1e-4) << g << " " << h;
    }
}

TEST(CurveBounds, UpperIgnoresBeta) {
    for (double beta : {-7.0, -0.5, 0.0, 3.25, 40.0})
        EXPECT_DOUBLE_EQ(curve_gldim_bounds({4, beta, 2}).upper, curve_gldim_bounds({4, 0, 2}).upper);
}

TEST(CurveGldim, LowGenusIsOne) {
    for (int g : {0, 1})
        for (double beta : {-3.0, 0.0, 2.5})
            for (double h : {0.1, 1.0, 30.0}) {
                const auto v = curve_gldim({g, beta, h});
                EXPECT_EQ(v.lower, 1.0);
                EXPECT_EQ(v.upper, 1.0);
                EXPECT_TRUE(v.exact());
            }
    const auto g2 = curve_gldim({2, 0, 1});
    EXPECT_FALSE(g2.exact());
}

TEST(CurveGldim, GenusZeroOracle) {
    for (double beta : {-1.0, 0.0, 0.7})
        for (double h : {0.5, 1.0, 3.0}) {
            const double sup = genus0_oracle(beta, h, 200);
            EXPECT_LT(sup, 1.0);
            EXPECT_NEAR(sup, 1.0, 1e-2) << beta << " " << h;
        }
}

TEST(CurveGldim, GenusOneOracle) {
    for (double beta : {0.0, 0.3})
        for (double h : {0.5, 2.0}) {
            const double sup = genus1_oracle(beta, h, 50);
            EXPECT_LE(sup, 1.0 + 1e-12);
            EXPECT_GE(sup, 1.0 - 1e-2);
        }
}

TEST(CurveScan, Examples) {
    const auto rows = curve_inf_scan(2, {1, 10, 100, 1000}, 0);
    ASSERT_EQ(rows.size(), 4u);
    const double expected[] = {1.5, 1.0635, 1.00637, 1.000637};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_NEAR(rows[i].upper, expected[i], 1e-4 * expected[i]);
        EXPECT_GT(rows[i].lower, 1);
        if (i > 0) {
            EXPECT_LT(rows[i].upper, rows[i - 1].upper);
        }
    }
    EXPECT_LE(rows.back().upper, 1.001);
    for (const auto& r : curve_inf_scan(1, {0.5, 2, 9}, 1.5)) {
        EXPECT_EQ(r.lower, 1.0);
        EXPECT_EQ(r.upper, 1.0);
    }
    EXPECT_EQ(curve_scan_csv(curve_inf_scan(1, {2}, 0)), "H,lower,upper\n2,1,1\n");
}

TEST(CurveScan, Errors) {
    EXPECT_THROW(curve_inf_scan(2, {}, 0), EmptyGrid);
    EXPECT_THROW(curve_inf_scan(2, {1, 0.5}, 0), ConfigError);
    EXPECT_THROW(curve_inf_scan(2, {-1, 2}, 0), ConfigError);
}
