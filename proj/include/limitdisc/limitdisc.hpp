#pragma once

// Umbrella header: composition sequences of Möbius maps of the unit disc,
// their limit-point / limit-disc classification, exact limit discs,
// Hausdorff dimension of the limit-disc sequence set, and orbit dynamics.

#include "classify.hpp"
#include "dimension.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "ext_complex.hpp"
#include "io.hpp"
#include "moebius.hpp"
#include "tangency.hpp"
