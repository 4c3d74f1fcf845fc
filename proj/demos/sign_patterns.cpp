// Scan A_{2l}^(2) algebras at even level for negative structure constants and
// report the sign-twist pattern.

#include "kacfusion/kacfusion.hpp"

#include <iostream>

using namespace kacfusion;

int main(int argc, char** argv) {
    int l = argc > 1 ? std::atoi(argv[1]) : 1;
    long long max_level = argc > 2 ? std::stoll(argv[2]) : 12;

    const auto& data = affine_data(AffineType{'A', 2 * l, 2});
    for (long long k = 2; k <= max_level; k += 2) {
        FusionAlgebra alg = twisted_verlinde(data, k);
        long long negatives = 0;
        for (const auto& [key, row] : alg.tensor)
            for (const auto& [c, val] : row)
                if (val < 0) ++negatives;
        SignTwistReport rep = sign_twist_check(alg);
        std::cout << "level " << k << ": dim " << alg.basis.size() << ", " << negatives
                  << " negative constants, sign twist "
                  << (rep.conjecture_holds ? "holds" : "FAILS") << "\n";
    }
    return 0;
}
