#include "kmk/field_tower/gf2_linear.hpp"

#include <bit>
#include <cstdint>
#include <unordered_map>

namespace kmk {

namespace {

using Bits = std::vector<uint64_t>;

void flip(Bits& b, std::size_t i) { b[i / 64] ^= uint64_t{1} << (i % 64); }
void xor_into(Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}
long first_bit(const Bits& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) return static_cast<long>(i * 64 + static_cast<std::size_t>(std::countr_zero(b[i])));
  return -1;
}

}  // namespace

std::optional<std::vector<std::size_t>> gf2_solve(const std::vector<std::vector<std::size_t>>& columns,
                                                  const std::vector<std::size_t>& target, std::size_t rows) {
  const std::size_t NC = columns.size();
  const std::size_t rw = (rows + 63) / 64, cw = (NC + 63) / 64;
  struct Entry {
    Bits r, c;  // reduced row vector and the columns combined into it
  };
  std::vector<Entry> basis;
  std::unordered_map<long, std::size_t> pivot;
  auto reduce = [&](Bits& r, Bits& c) {
    for (;;) {
      const long p = first_bit(r);
      if (p < 0) return p;
      auto it = pivot.find(p);
      if (it == pivot.end()) return p;
      xor_into(r, basis[it->second].r);
      xor_into(c, basis[it->second].c);
    }
  };
  for (std::size_t j = 0; j < NC; ++j) {
    Bits r(rw, 0), c(cw, 0);
    for (std::size_t i : columns[j]) flip(r, i);
    flip(c, j);
    const long p = reduce(r, c);
    if (p < 0) continue;
    pivot.emplace(p, basis.size());
    basis.push_back({std::move(r), std::move(c)});
  }
  Bits r(rw, 0), c(cw, 0);
  for (std::size_t i : target) flip(r, i);
  if (reduce(r, c) >= 0) return std::nullopt;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < NC; ++j)
    if ((c[j / 64] >> (j % 64)) & 1u) out.push_back(j);
  return out;
}

}  // namespace kmk
