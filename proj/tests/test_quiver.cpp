#include <gtest/gtest.h>

#include <random>

#include "sdlab/quiver.hpp"

using namespace sdlab;

namespace {

// Brute-force oracle: all nonzero d in [0, bound]^n with Tits form 1.
std::size_t count_roots_in_box(const Quiver& q, int bound) {
    const int n = q.vertex_count();
    IntVector d(n, 0);
    std::size_t count = 0;
    while (true) {
        int i = 0;
        while (i < n && d[i] == bound) d[i++] = 0;
        if (i == n) break;
        ++d[i];
        if (tits_form(q, d) == 1) ++count;
    }
    return count;
}

double spectral_radius(const IntMatrix& m) {
    Eigen::MatrixXd md = m.cast<double>();
    Eigen::EigenSolver<Eigen::MatrixXd> es(md);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

TEST(ParseQuiver, SmallestInputs) {
    const Quiver a2 = parse_quiver("vertices:2; arrows:1->2");
    EXPECT_EQ(a2.vertex_count(), 2);
    ASSERT_EQ(a2.arrows().size(), 1u);
    EXPECT_EQ(a2.arrows()[0], (Arrow{0, 1}));

    const Quiver k2 = parse_quiver("vertices:2; arrows:1->2,1->2");
    EXPECT_EQ(k2.arrows().size(), 2u);
    EXPECT_EQ(k2, parse_quiver("K2"));

    EXPECT_THROW(parse_quiver("vertices:1; arrows:1->1"), CyclicQuiver);
}

TEST(ParseQuiver, WhitespaceAndErrors) {
    EXPECT_EQ(parse_quiver("  vertices : 3 ;arrows: 1 -> 2 , 3->2 "),
              Quiver(3, {{0, 1}, {2, 1}}));
    EXPECT_EQ(parse_quiver("vertices:1; arrows:").arrows().size(), 0u);
    EXPECT_THROW(parse_quiver("vertices:2; arrows:1->3"), ParseError);
    EXPECT_THROW(parse_quiver("vertices:2 arrows:1->2"), ParseError);
    EXPECT_THROW(parse_quiver("vertices:2; arrows:1-2"), ParseError);
    EXPECT_THROW(parse_quiver("vertices:0; arrows:"), ParseError);
    EXPECT_THROW(parse_quiver("vertices:3; arrows:1->2,2->3,3->1"), CyclicQuiver);
    EXPECT_THROW(parse_quiver("D3"), ParseError);
    EXPECT_THROW(parse_quiver("E9"), ParseError);
}

// Dynkin presets alternate sources and sinks.
TEST(ParseQuiver, PresetsAreBipartite) {
    EXPECT_EQ(parse_quiver("A2").to_text(), "vertices:2; arrows:1->2");
    EXPECT_EQ(parse_quiver("A4").to_text(), "vertices:4; arrows:1->2,3->2,3->4");
    EXPECT_EQ(parse_quiver("D4").to_text(), "vertices:4; arrows:1->2,3->2,4->2");
    for (const char* name : {"A2", "A5", "A8", "D4", "D5", "D7", "E6", "E7", "E8"}) {
        const Quiver q = parse_quiver(name);
        std::vector<int> in(q.vertex_count()), out(q.vertex_count());
        for (const auto& a : q.arrows()) ++out[a.source], ++in[a.target];
        for (int v = 0; v < q.vertex_count(); ++v) EXPECT_TRUE(in[v] == 0 || out[v] == 0) << name << " vertex " << v + 1;
    }
}

TEST(ParseQuiver, TextRoundTrip) {
    for (const char* name : {"A1", "A4", "D5", "E6", "E8", "K3"}) {
        const Quiver q = parse_quiver(name);
        EXPECT_EQ(parse_quiver(q.to_text()), q) << name;
    }
}

TEST(EulerForm, Examples) {
    const Quiver a2 = parse_quiver("A2");
    EXPECT_EQ(euler_form(a2, {1, 0}, {1, 0}), 1);
    EXPECT_EQ(euler_form(a2, {1, 0}, {0, 1}), -1);
    EXPECT_EQ(euler_form(parse_quiver("K2"), {1, 0}, {0, 1}), -2);
    EXPECT_THROW(euler_form(a2, {1}, {0, 1}), DimensionMismatch);
}

TEST(EulerForm, MatrixAgreesWithDoubleSum) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (const char* name : {"A4", "D5", "E6", "K3"}) {
        const Quiver q = parse_quiver(name);
        const IntMatrix e = euler_matrix(q);
        const int n = q.vertex_count();
        for (int trial = 0; trial < 100; ++trial) {
            IntVector d(n), f(n);
            for (auto& x : d) x = coeff(rng);
            for (auto& x : f) x = coeff(rng);
            std::int64_t via_matrix = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) via_matrix += d[i] * e(i, j) * f[j];
            EXPECT_EQ(via_matrix, euler_form(q, d, f));
        }
    }
}

TEST(Coxeter, A2Examples) {
    const Quiver a2 = parse_quiver("A2");
    const EulerData ed = coxeter_matrix(a2);
    // tau S_1 = S_2 for 1 -> 2.
    EXPECT_EQ(apply(ed.coxeter, {1, 0}), (IntVector{0, 1}));
    const IntMatrix id = IntMatrix::Identity(2, 2);
    EXPECT_EQ(ed.coxeter * ed.coxeter * ed.coxeter, id);
    EXPECT_NE(ed.coxeter * ed.coxeter, id);
    EXPECT_EQ(ed.coxeter * ed.coxeter_inverse, id);
}

TEST(Coxeter, KroneckerSpectralRadius) {
    // K2 is tame: Phi is unipotent. K3 is wild: radius (7 + sqrt 45) / 2.
    const IntMatrix phi2 = coxeter_matrix(parse_quiver("K2")).coxeter;
    EXPECT_EQ(phi2.trace(), 2);
    EXPECT_NEAR(spectral_radius(phi2), 1.0, 1e-6);
    const IntMatrix phi3 = coxeter_matrix(parse_quiver("K3")).coxeter;
    EXPECT_NEAR(spectral_radius(phi3), (7 + std::sqrt(45.0)) / 2, 1e-9);
    EXPECT_GT(spectral_radius(phi3), 1.0);
}

TEST(Coxeter, Invariants) {
    for (const char* name : {"A1", "A3", "D4", "E6", "K2", "K3"}) {
        const Quiver q = parse_quiver(name);
        const EulerData ed = coxeter_matrix(q);
        EXPECT_EQ(ed.serre_k_action, -ed.coxeter) << name;
        const auto det = std::llround(ed.coxeter.cast<double>().determinant());
        EXPECT_TRUE(det == 1 || det == -1) << name;
        // Serre duality on K-theory: <x, y> = <y, S x>.
        const IntMatrix e = ed.euler;
        EXPECT_EQ(e, (ed.serre_k_action.transpose() * e.transpose()).eval()) << name;
    }
}

TEST(Dynkin, Classification) {
    auto a3 = classify_dynkin(parse_quiver("A3"));
    ASSERT_TRUE(a3);
    EXPECT_EQ(a3->series, 'A');
    EXPECT_EQ(a3->rank, 3);
    EXPECT_EQ(a3->coxeter_number, 4);

    EXPECT_FALSE(classify_dynkin(parse_quiver("K2")));

    auto e6 = classify_dynkin(parse_quiver("E6"));
    ASSERT_TRUE(e6);
    EXPECT_EQ(e6->series, 'E');
    EXPECT_EQ(e6->coxeter_number, 12);
    EXPECT_EQ(e6->fcy_pair, std::make_pair(12, 10));

    EXPECT_THROW(classify_dynkin(parse_quiver("vertices:3; arrows:1->2")), DisconnectedQuiver);
    // Affine D4~ (star with four legs) and A2~ cycles are not Dynkin.
    EXPECT_FALSE(classify_dynkin(parse_quiver("vertices:5; arrows:1->5,2->5,3->5,4->5")));
    EXPECT_FALSE(classify_dynkin(parse_quiver("vertices:3; arrows:1->2,2->3,1->3")));
}

TEST(Dynkin, CoxeterOrderIsMinimal) {
    // A_n: n+1, D_n: 2n-2, E: 12/18/30, for several orientations.
    const std::vector<std::pair<std::string, int>> cases = {
        {"A1", 2}, {"A2", 3}, {"A5", 6}, {"D4", 6}, {"D6", 10}, {"E6", 12}, {"E7", 18}, {"E8", 30},
        {"vertices:4; arrows:2->1,2->3,4->3", 5},
        {"vertices:4; arrows:2->1,3->1,4->1", 6},
    };
    for (const auto& [text, h] : cases) {
        const Quiver q = parse_quiver(text);
        auto cls = classify_dynkin(q);
        ASSERT_TRUE(cls) << text;
        EXPECT_EQ(cls->coxeter_number, h) << text;
        const IntMatrix phi = coxeter_matrix(q).coxeter;
        const IntMatrix id = IntMatrix::Identity(q.vertex_count(), q.vertex_count());
        IntMatrix p = phi;
        for (int m = 1; m < h; ++m, p = p * phi) EXPECT_NE(p, id) << text << " m=" << m;
        EXPECT_EQ(p, id) << text;
    }
}

TEST(PositiveRoots, A2) {
    const auto roots = positive_roots(parse_quiver("A2"));
    EXPECT_EQ(roots, (std::vector<IntVector>{{0, 1}, {1, 0}, {1, 1}}));
}

TEST(PositiveRoots, MatchBruteForce) {
    const std::vector<std::tuple<std::string, int, std::size_t>> cases = {
        {"A3", 2, 6}, {"D4", 3, 12}, {"A5", 2, 15}, {"D5", 3, 20}, {"E6", 3, 36}};
    for (const auto& [name, bound, count] : cases) {
        const Quiver q = parse_quiver(name);
        const auto roots = positive_roots(q);
        EXPECT_EQ(roots.size(), count) << name;
        EXPECT_EQ(count_roots_in_box(q, bound), count) << name;
        for (const auto& r : roots) EXPECT_EQ(tits_form(q, r), 1);
    }
    EXPECT_THROW(positive_roots(parse_quiver("K2")), NotDynkin);
}
