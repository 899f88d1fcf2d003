#pragma once

#include "fockbell/combinatorics.hpp"
#include "fockbell/errors.hpp"
#include "fockbell/exact.hpp"
#include "fockbell/fock.hpp"
#include "fockbell/hardy.hpp"
#include "fockbell/io.hpp"
#include "fockbell/nonlocality.hpp"
#include "fockbell/optics.hpp"
#include "fockbell/optimize.hpp"
#include "fockbell/phase_oracle.hpp"
#include "fockbell/scalar.hpp"

namespace fockbell {
inline constexpr const char* kVersion = "0.1.0";
}
