#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace kmk {

// Columns and the target are sparse GF(2) vectors given as lists of row
// indices below `rows` (repeats cancel).  Returns a set of columns whose sum
// is the target, or nullopt when the target is outside their span.
std::optional<std::vector<std::size_t>> gf2_solve(const std::vector<std::vector<std::size_t>>& columns,
                                                  const std::vector<std::size_t>& target, std::size_t rows);

}  // namespace kmk
