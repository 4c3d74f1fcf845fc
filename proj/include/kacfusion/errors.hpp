#pragma once

#include <stdexcept>
#include <string>

namespace kacfusion {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define KACFUSION_ERROR_TYPE(Name)                                    \
    struct Name : Error {                                             \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

KACFUSION_ERROR_TYPE(UnknownType);
KACFUSION_ERROR_TYPE(LevelNonPositive);
KACFUSION_ERROR_TYPE(NotDominant);
KACFUSION_ERROR_TYPE(NotIntegral);
KACFUSION_ERROR_TYPE(NonIntegralWeight);
KACFUSION_ERROR_TYPE(InvalidLattice);
KACFUSION_ERROR_TYPE(NotRegular);
KACFUSION_ERROR_TYPE(OutOfRange);
KACFUSION_ERROR_TYPE(WeightNotInBasis);
KACFUSION_ERROR_TYPE(NearHalfInteger);
KACFUSION_ERROR_TYPE(SingularPoint);
KACFUSION_ERROR_TYPE(SingleRootLength);
KACFUSION_ERROR_TYPE(UntwistedType);

#undef KACFUSION_ERROR_TYPE

} // namespace kacfusion
