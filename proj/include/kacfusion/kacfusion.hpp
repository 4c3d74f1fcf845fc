// Umbrella header.

#pragma once

#include "kacfusion/cartan.hpp"
#include "kacfusion/chars.hpp"
#include "kacfusion/fusion.hpp"
#include "kacfusion/json_io.hpp"
#include "kacfusion/modular.hpp"
#include "kacfusion/quotient.hpp"
#include "kacfusion/twisted.hpp"
#include "kacfusion/weights.hpp"
#include "kacfusion/weyl.hpp"
