#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kacfusion;
using kacfusion::testing::fw;

TEST_CASE("weight JSON encoding uses exact fraction strings", "[io]") {
    FiniteWeight w{{Rat(1, 2), Rat(-3), Rat(0)}};
    Json j = to_json(w, 4);
    CHECK(j["level"] == 4);
    CHECK(j["labels"][0] == "1/2");
    CHECK(j["labels"][1] == "-3");
    CHECK(j["labels"][2] == "0");
    CHECK(rat_from_string("1/2") == Rat(1, 2));
    CHECK(rat_from_string("-3") == Rat(-3));
    CHECK_THROWS(rat_from_string("x"));
}

TEST_CASE("emission is deterministic", "[io]") {
    auto alg = verlinde_algebra(affine_data("A2~1"), 2, {2, false});
    std::string once = to_json(alg).dump(2);
    auto alg2 = verlinde_algebra(affine_data("A2~1"), 2, {1, false});
    std::string twice = to_json(alg2).dump(2);
    CHECK(once == twice);

    auto ma = modular_action(affine_data("A1~1"), 2);
    CHECK(to_json(ma).dump() == to_json(ma).dump());
}

TEST_CASE("floats are rounded to 12 significant digits", "[io]") {
    CHECK(round_sig(0.70710678118654752440) == 0.707106781187);
    CHECK(round_sig(1.0) == 1.0);
    CHECK(round_sig(-3.3333333333333333e-5) == -3.33333333333e-5);
}

TEST_CASE("CSV has one row per nonzero entry", "[io]") {
    auto alg = verlinde_algebra(affine_data("A1~1"), 1, {1, false});
    std::string csv = tensor_to_csv(alg.tensor);
    long long rows = std::count(csv.begin(), csv.end(), '\n');
    long long nonzeros = 0;
    for (const auto& [key, row] : alg.tensor) nonzeros += static_cast<long long>(row.size());
    CHECK(rows == nonzeros + 1); // header line
    CHECK(csv.rfind("lambda,mu,nu,N\n", 0) == 0);
}

TEST_CASE("complex matrices serialize row-major as re/im pairs", "[io]") {
    Cmat m(1, 2);
    m(0, 0) = Cplx(1.5, -2.5);
    m(0, 1) = Cplx(0, 1);
    Json j = to_json(m);
    CHECK(j[0][0][0] == 1.5);
    CHECK(j[0][0][1] == -2.5);
    CHECK(j[0][1][0] == 0.0);
    CHECK(j[0][1][1] == 1.0);
}
