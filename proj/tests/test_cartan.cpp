#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kacfusion;
using kacfusion::testing::fw;

TEST_CASE("type parsing round-trips and rejects junk", "[cartan]") {
    CHECK(to_string(parse_type("A2~1")) == "A2~1");
    CHECK(to_string(parse_type("A5~2")) == "A5~2");
    CHECK(to_string(parse_type("D4~3")) == "D4~3");
    CHECK(parse_type("E6").r == 1);
    CHECK_THROWS_AS(parse_type("X2~1"), UnknownType);
    CHECK_THROWS_AS(affine_data("A2~3"), UnknownType);
    CHECK_THROWS_AS(affine_data("D2~2"), UnknownType); // D_{l+1}^(2) needs l >= 2
    CHECK_NOTHROW(affine_data("D3~2"));
    CHECK_NOTHROW(affine_data("D4~2"));
    CHECK_THROWS_AS(affine_data("B1~1"), UnknownType);
    CHECK_THROWS_AS(affine_data("G3~1"), UnknownType);
    CHECK_THROWS_AS(affine_data("F4~3"), UnknownType);
}

TEST_CASE("labels, Coxeter numbers, and the A_2^(2) transcription", "[cartan]") {
    const auto& a1 = affine_data("A1~1");
    CHECK(a1.h == 2);
    CHECK(a1.h_dual == 2);
    CHECK(a1.labels == IntVec{1, 1});

    const auto& a22 = affine_data("A2~2");
    CHECK(a22.labels[0] == 2);
    CHECK(a22.h_dual == 3);
    // K = alpha_0^vee + 2 alpha_1^vee
    CHECK(a22.dual_labels == IntVec{1, 2});

    for (std::string s : {"A1~1", "A3~1", "B3~1", "C2~1", "G2~1", "F4~1", "D4~1", "E6~1",
                          "A2~2", "A4~2", "A5~2", "D3~2", "D4~2", "E6~2", "D4~3"}) {
        const auto& d = affine_data(s);
        long long hs = 0, hds = 0;
        for (int i = 0; i <= d.rank; ++i) { hs += d.labels[i]; hds += d.dual_labels[i]; }
        CHECK(hs == d.h);
        CHECK(hds == d.h_dual);
        if (d.is_untwisted()) CHECK(d.labels[0] == 1);
    }
}

TEST_CASE("weight gram matrices", "[cartan]") {
    const auto& a1 = affine_data("A1~1");
    CHECK(a1.gram[0][0] == Rat(1, 2));

    // A_2^(2): (Lambda_1, Lambda_1) consistent with (alpha_1, alpha_1) = (a_1^vee/a_1) a_11 = 4
    const auto& a22 = affine_data("A2~2");
    FiniteWeight alpha1 = fw({2}); // labels of alpha_1
    CHECK(a22.norm2(alpha1) == Rat(4));
    CHECK(a22.gram[0][0] == Rat(1));

    for (std::string s : {"A2~1", "B3~1", "C3~1", "G2~1", "A5~2", "D4~2", "E6~2", "D4~3"}) {
        const auto& d = affine_data(s);
        for (int i = 0; i < d.rank; ++i)
            for (int j = 0; j < d.rank; ++j) CHECK(d.gram[i][j] == d.gram[j][i]);
        // (lambda, mu) = labels . gram . labels agrees with the root-space form on theta
        CHECK(d.norm2(d.theta) == Rat(2 * d.labels[0] * d.dual_labels[0]));
    }
}

TEST_CASE("transpose pairs and involution", "[cartan]") {
    CHECK(transpose(affine_data("A5~2")).atype == parse_type("B3~1"));
    CHECK(transpose(affine_data("D4~3")).atype == parse_type("G2~1"));
    CHECK(transpose(affine_data("A2~1")).atype == parse_type("A2~1"));
    CHECK(transpose(affine_data("D3~2")).atype == parse_type("C2~1"));
    CHECK(transpose(affine_data("E6~2")).atype == parse_type("F4~1"));

    for (std::string s : {"A1~1", "A3~1", "B2~1", "B3~1", "C2~1", "C3~1", "G2~1", "F4~1",
                          "A2~2", "A5~2", "D3~2", "D4~2", "E6~2", "D4~3"}) {
        const auto& d = affine_data(s);
        const auto& tt = transpose(transpose(d));
        CHECK(tt.atype == d.atype);
        const auto& t = transpose(d);
        CHECK(t.h == d.h_dual);
        CHECK(t.h_dual == d.h);
        if (d.is_a2even_type()) {
            // self-transpose through node reversal: labels read backwards
            IntVec rev(d.dual_labels.rbegin(), d.dual_labels.rend());
            CHECK(t.labels == rev);
        } else {
            // labels and dual labels swap under transpose
            CHECK(t.labels == d.dual_labels);
            CHECK(t.dual_labels == d.labels);
        }
    }
}

TEST_CASE("tau is an isometry onto the transpose", "[cartan]") {
    // gram(d) transported under Lambda_i -> (a_i^vee/a_i) Lambda_i^t equals gram(d^t)
    for (std::string s : {"A5~2", "D3~2", "D4~2", "E6~2", "D4~3"}) {
        const auto& d = affine_data(s);
        const auto& t = transpose(d);
        std::mt19937 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            RatVec u(d.rank), v(d.rank);
            for (int i = 0; i < d.rank; ++i) {
                u[i] = Rat(static_cast<long long>(rng() % 13) - 6, 1 + rng() % 3);
                v[i] = Rat(static_cast<long long>(rng() % 13) - 6, 1 + rng() % 3);
            }
            RatVec tu(u), tv(v);
            for (int i = 0; i < d.rank; ++i) {
                Rat scale(d.dual_labels[i + 1], d.labels[i + 1]);
                tu[i] *= scale;
                tv[i] *= scale;
            }
            CHECK(bilinear(d.gram, u, v) == bilinear(t.gram, tu, tv));
        }
    }
}

TEST_CASE("M lattice selection", "[cartan]") {
    CHECK(affine_data("A2~1").m_lattice == MLatticeKind::CoRootImage);
    CHECK(affine_data("A2~2").m_lattice == MLatticeKind::CoRootImage);
    CHECK(affine_data("A4~2").m_lattice == MLatticeKind::CoRootImage);
    for (std::string s : {"A5~2", "D3~2", "D4~2", "E6~2", "D4~3"})
        CHECK(affine_data(s).m_lattice == MLatticeKind::RootLattice);
}
