#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

using namespace kacfusion;
using kacfusion::testing::brute_tensor;
using kacfusion::testing::fw;

TEST_CASE("weight systems", "[chars]") {
    const auto& a1 = affine_data("A1~1");
    const auto& ws = weight_system(a1, fw({1}));
    REQUIRE(ws.dominant_mults.size() == 1);
    CHECK(ws.dominant_mults[0].second == 1);
    auto all = full_weights(a1, ws);
    REQUIRE(all.size() == 2); // (1) and (-1)

    const auto& a2 = affine_data("A2~1");
    const auto& adj = weight_system(a2, fw({1, 1}));
    long long zero_mult = 0;
    for (const auto& [w, m] : adj.dominant_mults)
        if (w == fw({0, 0})) zero_mult = m;
    CHECK(zero_mult == 2);

    // total weight count equals the Weyl dimension
    for (std::string s : {"A2~1", "B3~1", "C2~1", "G2~1", "A4~2"}) {
        const auto& d = affine_data(s);
        std::mt19937 rng(17);
        for (int t = 0; t < 5; ++t) {
            RatVec lab(d.rank);
            for (int i = 0; i < d.rank; ++i) lab[i] = Rat(static_cast<long long>(rng() % 3));
            FiniteWeight hw{lab};
            long long total = 0;
            for (const auto& [w, m] : full_weights(d, weight_system(d, hw))) total += m;
            CHECK(total == weyl_dim(d, hw));
        }
    }

    CHECK_THROWS_AS(weight_system(a2, fw({-1, 0})), NotDominant);
    CHECK_THROWS_AS(weight_system(a2, FiniteWeight{{Rat(1, 2), Rat(0)}}), NotIntegral);
}

TEST_CASE("weight system multiplicities are Weyl invariant on orbit samples", "[chars]") {
    const auto& b3 = affine_data("B3~1");
    const auto& ws = weight_system(b3, fw({1, 0, 1}));
    std::mt19937 rng(29);
    std::map<RatVec, long long> by_weight;
    for (const auto& [w, m] : full_weights(b3, ws)) by_weight[w.labels] = m;
    for (const auto& [dom, m] : ws.dominant_mults) {
        FiniteWeight img = dom;
        for (int hop = 0; hop < 5; ++hop) img = reflect(b3, 1 + rng() % 3, img);
        CHECK(by_weight[img.labels] == m);
    }
}

TEST_CASE("tensor decomposition against the character-multiset oracle", "[chars]") {
    // frozen small cases first
    const auto& a1 = affine_data("A1~1");
    auto cg = tensor_decompose(a1, fw({1}), fw({1}));
    REQUIRE(cg.size() == 2);
    CHECK(cg[fw({0})] == 1);
    CHECK(cg[fw({2})] == 1);

    const auto& a2 = affine_data("A2~1");
    auto d2 = tensor_decompose(a2, fw({1, 0}), fw({0, 1}));
    REQUIRE(d2.size() == 2);
    CHECK(d2[fw({0, 0})] == 1);
    CHECK(d2[fw({1, 1})] == 1);

    const auto& b3 = affine_data("B3~1");
    auto d3 = tensor_decompose(b3, fw({0, 0, 1}), fw({0, 0, 1}));
    CHECK(d3[fw({0, 0, 0})] == 1);
    CHECK(d3[fw({1, 0, 0})] == 1);
    CHECK(d3[fw({0, 1, 0})] == 1);
    CHECK(d3[fw({0, 0, 2})] == 1);

    // randomized agreement with brute-force character multiplication
    std::mt19937 rng(37);
    for (std::string s : {"A1~1", "A2~1", "B2~1", "B3~1", "C3~1", "G2~1", "A4~2"}) {
        const auto& d = affine_data(s);
        int done = 0;
        while (done < 6) {
            RatVec u(d.rank), v(d.rank);
            for (int i = 0; i < d.rank; ++i) {
                u[i] = Rat(static_cast<long long>(rng() % 3));
                v[i] = Rat(static_cast<long long>(rng() % 3));
            }
            FiniteWeight lu{u}, lv{v};
            if (weyl_dim(d, lu) > 200 || weyl_dim(d, lv) > 200) continue;
            auto fast = tensor_decompose(d, lu, lv);
            auto brute = brute_tensor(d, lu, lv);
            CHECK(fast == brute);
            // symmetry
            CHECK(fast == tensor_decompose(d, lv, lu));
            // dimension consistency
            long long total = 0;
            for (const auto& [w, m] : fast) total += m * weyl_dim(d, w);
            CHECK(total == weyl_dim(d, lu) * weyl_dim(d, lv));
            ++done;
        }
    }
}

TEST_CASE("character evaluation", "[chars]") {
    const auto& a1 = affine_data("A1~1");
    const auto& a2 = affine_data("A2~1");

    // trivial character is 1 at every regular point
    std::mt19937 rng(41);
    for (int t = 0; t < 10; ++t) {
        FiniteWeight xi{{Rat(1 + rng() % 4), Rat(1 + rng() % 4)}};
        Cplx c = char_eval(a2, FiniteWeight::zero(2), xi, 7);
        CHECK(std::abs(c - Cplx(1, 0)) < 1e-10);
    }

    // A1: two-term Weyl sum checked directly
    {
        long long m = 3;
        Cplx direct = (unit_phase(Rat(-2, 2 * 3)) - unit_phase(Rat(2, 2 * 3))) /
                      (unit_phase(Rat(-1, 2 * 3)) - unit_phase(Rat(1, 2 * 3)));
        // (w(lam+rho), xi) = ±2 * (Lambda,Lambda) = ±1, over m=3; rho term ±1/2
        Cplx val = char_eval(a1, fw({1}), fw({1}), m);
        CHECK(std::abs(val - direct) < 1e-12);
    }

    // numerator form equals denominator form times the quotient
    for (int t = 0; t < 10; ++t) {
        FiniteWeight lam{{Rat(rng() % 3), Rat(rng() % 3)}};
        FiniteWeight xi{{Rat(1 + rng() % 5), Rat(1 + rng() % 5)}};
        long long m = 6 + rng() % 5;
        const auto& w = weyl_group(a2);
        FiniteWeight rho = rho_weight(2);
        auto alternant = [&](const FiniteWeight& shifted) {
            Cplx sum(0, 0);
            IntVec base{shifted.labels[0].numerator(), shifted.labels[1].numerator()};
            RatVec gx = mat_vec(a2.gram, xi.labels);
            for (size_t e = 0; e < w.size(); ++e) {
                IntVec img = apply_int(w.elements[e], base);
                Rat phase = Rat(img[0]) * gx[0] + Rat(img[1]) * gx[1];
                sum += static_cast<double>(w.signs[e]) * unit_phase(-phase / Rat(m));
            }
            return sum;
        };
        Cplx num = alternant(lam + rho), den = alternant(rho);
        if (std::abs(den) < 1e-12) continue;
        CHECK(std::abs(num - den * char_eval(a2, lam, xi, m)) < 1e-10);
    }

    // dimension limit with the large-m sentinel
    Cplx dim_a2 = char_eval(a2, fw({1, 1}), rho_weight(2), 10000);
    CHECK(std::abs(dim_a2 - Cplx(8, 0)) < 1e-4);
    Cplx dim_a1 = char_eval(a1, fw({3}), rho_weight(1), 10000);
    CHECK(std::abs(dim_a1 - Cplx(4, 0)) < 1e-6);

    CHECK_THROWS_AS(char_eval(a1, fw({1}), fw({0}), 5), SingularPoint);
}

TEST_CASE("weight systems honor the disk cache", "[chars]") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "kacfusion_ws_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    setenv("KACFUSION_CACHE_DIR", dir.c_str(), 1);
    // a highest weight no other test touches, so the memo cache cannot mask the disk path
    const auto& a1 = affine_data("A1~1");
    const auto& ws = weight_system(a1, fw({37}));
    long long total = 0;
    for (const auto& [w, m] : full_weights(a1, ws)) total += m;
    CHECK(total == weyl_dim(a1, fw({37})));
    bool wrote = false;
    for (const auto& e : fs::directory_iterator(dir)) wrote = wrote || e.path().extension() == ".json";
    CHECK(wrote);
    unsetenv("KACFUSION_CACHE_DIR");
    fs::remove_all(dir);
}
