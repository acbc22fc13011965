#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace dgw {

/// Finite abelian group on ids [0, n) with identity 0. Character values are
/// stored as exponents k mod n, meaning exp(2 pi i k / n).
struct AbelianGroup {
  int n = 0;
  std::function<int(int, int)> mul;
};

/// All characters of `g` that agree with the given character on a subgroup.
/// `sub_values[h]` is the exponent at h for members of the subgroup and -1
/// elsewhere. Output order is deterministic: the smallest id outside the
/// current subgroup is adjoined next, and its branches are taken in
/// increasing exponent order.
std::vector<std::vector<std::int64_t>> extend_characters(const AbelianGroup& g, std::vector<std::int64_t> sub_values);

/// All characters of `g`.
std::vector<std::vector<std::int64_t>> all_characters(const AbelianGroup& g);

}  // namespace dgw
