#pragma once

#include <optional>

#include "kmk/field_tower/poly.hpp"

namespace kmk::detail {

// Returns the gcd, or nullopt if the modular attempts did not verify.
std::optional<Poly> brown_gcd(const Poly& a, const Poly& b);

}  // namespace kmk::detail
