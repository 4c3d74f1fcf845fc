// Print the left multiplication matrices of a fusion algebra.
// Usage: demo_fusion_table [type] [level]

#include "kacfusion/kacfusion.hpp"

#include <iostream>

using namespace kacfusion;

int main(int argc, char** argv) {
    std::string type = argc > 1 ? argv[1] : "A2~1";
    long long level = argc > 2 ? std::stoll(argv[2]) : 2;

    const auto& data = affine_data(type);
    FusionAlgebra alg = data.is_untwisted() ? verlinde_algebra(data, level)
                                            : twisted_verlinde(data, level);
    std::cout << "V_" << level << "(" << type << "), dim " << alg.basis.size() << "\n";
    for (int i = 0; i < alg.basis.size(); ++i) {
        std::cout << "chi_" << i << " = [";
        for (const auto& x : alg.basis.finite(i).labels) std::cout << " " << rat_to_string(x);
        std::cout << " ]\n";
    }
    for (int i = 0; i < alg.basis.size(); ++i) {
        std::cout << "\nL_" << i << ":\n";
        for (const auto& row : alg.left_matrix(i)) {
            for (long long x : row) std::cout << (x < 0 ? " " : "  ") << x;
            std::cout << "\n";
        }
    }
    return 0;
}
