#pragma once

// Umbrella header: the q-Fourier transform with floating deformation index,
// its hypergeometric closed forms for power-law windows, and the q -> 1+
// slice inversion.

#include "qft/errors.hpp"
#include "qft/function_spec.hpp"
#include "qft/hilhorst.hpp"
#include "qft/hyp2f1.hpp"
#include "qft/inversion.hpp"
#include "qft/qcore.hpp"
#include "qft/qft_engine.hpp"
#include "qft/quadrature.hpp"
#include "qft/richardson.hpp"

namespace qft {
inline constexpr const char* kVersion = "0.1.0";
}
