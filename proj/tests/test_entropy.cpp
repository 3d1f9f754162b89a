#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "sdlab/entropy.hpp"

using namespace sdlab;

namespace {

// Total dim Hom(G, S^n G) for a connected non-Dynkin quiver from K-theory alone:
// S^n P_i = tau^{n-1} I_i [n-1], dim Hom(P_j, X) = dim X_j, no Ext from projectives.
long long kronecker_total_oracle(const Quiver& q, int n) {
    const int vc = q.vertex_count();
    if (n == 0) {
        long long total = 0;
        for (int v = 0; v < vc; ++v)
            for (auto x : projective_rep(q, v).dims) total += x;
        return total;
    }
    const IntMatrix phi = coxeter_matrix(q).coxeter;
    long long total = 0;
    for (int v = 0; v < vc; ++v) {
        IntVector d = injective_rep(q, v).dims;
        for (int k = 0; k < n - 1; ++k) d = sdlab::apply(phi, d);
        for (auto x : d) total += x;
    }
    return total;
}

double log_spectral_radius(const IntMatrix& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m.cast<double>());
    return std::log(es.eigenvalues().cwiseAbs().maxCoeff());
}

double h_of(const char* name) { return classify_dynkin(parse_quiver(name))->coxeter_number; }

} // namespace

TEST(EntropySeries, PeriodicUpToShiftOnDynkin) {
    // S^h = [h-2] means the Poincare data at n+h is the data at n moved by -(h-2).
    for (const char* name : {"A2", "A3", "D4", "E6"}) {
        const auto cat = IndecCatalog::build(parse_quiver(name));
        const int h = cat->dynkin()->coxeter_number;
        const EntropySeries s(*cat, 3 * h);
        for (int n = 0; n + h <= s.n_max(); ++n) {
            std::map<int, long long> moved;
            for (const auto& [m, d] : s.poincare()[n]) moved[m - (h - 2)] = d;
            EXPECT_EQ(s.poincare()[n + h], moved) << name << " n=" << n;
        }
    }
}

TEST(EntropySeries, KroneckerTotalsMatchKTheory) {
    const Quiver q = parse_quiver("K2");
    const auto cat = entropy_catalog(q, 30);
    const EntropySeries s(*cat, 30);
    for (int n = 0; n <= 30; ++n) {
        long long total = 0;
        for (const auto& [m, d] : s.poincare()[n]) total += d;
        EXPECT_EQ(total, kronecker_total_oracle(q, n)) << n;
    }
}

TEST(EntropySeries, CsvShape) {
    const auto cat = IndecCatalog::build(parse_quiver("A2"));
    const auto csv = EntropySeries(*cat, 2).to_csv();
    EXPECT_EQ(csv, "n,m,dim\n0,0,3\n1,0,3\n2,-1,1\n2,0,1\n");
}

TEST(EntropyEstimate, A1IsZero) {
    for (double t : {-2.0, 0.0, 1.5}) EXPECT_NEAR(entropy_estimate(parse_quiver("A1"), t, 10), 0.0, 1e-12);
}

TEST(EntropyEstimate, DynkinIsExactlyLinear) {
    for (const char* name : {"A2", "A3", "A5", "D4", "D5", "E6"}) {
        const double h = h_of(name);
        for (double t : {-2.0, -0.5, 0.0, 1.0, 3.0})
            EXPECT_NEAR(entropy_estimate(parse_quiver(name), t, 40), t * (h - 2) / h, 1e-9) << name << " t=" << t;
    }
    EXPECT_NEAR(entropy_estimate(parse_quiver("A2"), 3.0, 12), 1.0, 0.05);
}

TEST(EntropyEstimate, KroneckerMatchesSpectralOracle) {
    const Quiver q = parse_quiver("K2");
    const double oracle = log_spectral_radius(coxeter_matrix(q).coxeter);
    EXPECT_NEAR(oracle, 0.0, 1e-6);
    EXPECT_NEAR(entropy_estimate(q, 0.0, 30), oracle, 0.05);
    // Both Serre dimensions are 1 and h_0 = 0, so h_t = t.
    EXPECT_NEAR(entropy_estimate(q, 1.0, 30), 1.0, 0.05);
    EXPECT_NEAR(entropy_estimate(q, -1.0, 30), -1.0, 0.05);
}

TEST(EntropyEstimate, WildQuiverHitsBudget) {
    EXPECT_THROW(entropy_estimate(parse_quiver("K3"), 0.0, 30), BudgetExceeded);
}

TEST(EntropyEstimate, Preconditions) {
    EXPECT_THROW(entropy_estimate(parse_quiver("A2"), 0.0, 3), ConfigError);
    EXPECT_THROW(sdim_estimate(parse_quiver("A2"), 9), ConfigError);
}

TEST(SdimEstimate, Examples) {
    const auto a2 = sdim_estimate(parse_quiver("A2"), 30);
    ASSERT_TRUE(a2.exact);
    EXPECT_EQ(*a2.exact, Rational(1, 3));
    EXPECT_NEAR(a2.upper, 1.0 / 3, 0.05);
    EXPECT_NEAR(a2.lower, 1.0 / 3, 0.05);

    const auto a1 = sdim_estimate(parse_quiver("A1"), 10);
    EXPECT_EQ(a1.upper, 0.0);
    EXPECT_EQ(a1.lower, 0.0);
    EXPECT_EQ(*a1.exact, Rational(0));

    const auto k2 = sdim_estimate(parse_quiver("K2"), 30);
    EXPECT_FALSE(k2.exact);
    EXPECT_NEAR(k2.upper, 1.0, 0.05);
    EXPECT_NEAR(k2.lower, 1.0, 0.05);
}

TEST(SdimEstimate, DynkinWindowsConverge) {
    for (const char* name : {"A3", "A4", "D4", "D5", "E6"}) {
        const double h = h_of(name);
        const auto d = sdim_estimate(parse_quiver(name), static_cast<int>(10 * h));
        EXPECT_GE(d.upper, d.lower) << name;
        EXPECT_NEAR(d.upper, (h - 2) / h, 0.05) << name;
        EXPECT_NEAR(d.lower, (h - 2) / h, 0.05) << name;
        Rational expected(static_cast<long>(h) - 2, static_cast<long>(h));
        expected.canonicalize();
        EXPECT_EQ(*d.exact, expected) << name;
    }
}

TEST(Volume, Examples) {
    EXPECT_NEAR(volume(parse_quiver("A2"), 8.0, 30), 2.0, 0.1);
    EXPECT_NEAR(volume(parse_quiver("A1"), 5.0, 10), 1.0, 1e-12);
    EXPECT_NEAR(volume(parse_quiver("A3"), 1.0, 30), std::exp(entropy_estimate(parse_quiver("A3"), 0.0, 30)), 1e-12);
    EXPECT_THROW(volume(parse_quiver("A2"), 0.0, 30), ConfigError);
}

TEST(Volume, DynkinScaling) {
    for (const char* name : {"A2", "A4", "D4"}) {
        const double h = h_of(name), d = (h - 2) / h;
        const double v1 = volume(parse_quiver(name), 1.0, 40);
        for (double lambda : {0.5, 2.0, 8.0})
            EXPECT_NEAR(std::log(volume(parse_quiver(name), lambda, 40)) - std::log(v1) - d * std::log(lambda), 0.0, 0.05);
    }
}

TEST(EntropyProfile, Examples) {
    const auto a2 = entropy_profile(parse_quiver("A2"), {-2, -1, 0, 1, 2}, 30);
    EXPECT_NEAR(a2.slope, 1.0 / 3, 0.05);
    EXPECT_NEAR(a2.intercept, 0.0, 0.05);
    EXPECT_LE(a2.residual, 0.05);
    EXPECT_DOUBLE_EQ(a2.c_hat.real(), a2.slope);
    EXPECT_NEAR(a2.c_hat.imag(), 0.0, 0.05);

    const auto a1 = entropy_profile(parse_quiver("A1"), {-1, 0, 1}, 10);
    EXPECT_NEAR(a1.slope, 0.0, 1e-12);
    EXPECT_NEAR(a1.intercept, 0.0, 1e-12);

    const auto a3 = entropy_profile(parse_quiver("A3"), {-1, 0, 1, 2}, 30);
    EXPECT_NEAR(a3.slope, 0.5, 0.05);
    EXPECT_GE(a3.residual, 0.0);

    EXPECT_THROW(entropy_profile(parse_quiver("A2"), {0, 1}, 30), ConfigError);
}
