#include "dgw/abelian.hpp"

#include <numeric>
#include <tuple>
#include <utility>
#include <stdexcept>

namespace dgw {
namespace {

std::int64_t mod(std::int64_t x, std::int64_t n) {
  x %= n;
  return x < 0 ? x + n : x;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
  std::int64_t g = n, x = 0, x1 = 1, r = mod(a, n);
  while (r != 0) {
    const std::int64_t t = g / r;
    std::tie(g, r) = std::pair{r, g - t * r};
    std::tie(x, x1) = std::pair{x1, x - t * x1};
  }
  if (g != 1) throw std::logic_error("inv_mod: not invertible");
  return mod(x, n);
}

void extend(const AbelianGroup& G, std::vector<std::int64_t>& val, std::vector<int>& members,
            std::vector<std::vector<std::int64_t>>& out) {
  const std::int64_t n = G.n;
  if (static_cast<int>(members.size()) == G.n) {
    out.push_back(val);
    return;
  }
  int g = 0;
  while (val[g] >= 0) ++g;
  // Smallest m > 0 with g^m in the current subgroup.
  int m = 1, h = g;
  while (val[h] < 0) {
    h = G.mul(h, g);
    ++m;
  }
  const std::int64_t v = val[h];
  const std::int64_t d = std::gcd<std::int64_t>(m, n);
  if (v % d != 0) throw std::logic_error("extend_characters: subgroup character does not extend");
  const std::int64_t nd = n / d;
  const std::int64_t w0 = mod((v / d) * inv_mod(m / d, nd), nd);
  const std::size_t base = members.size();
  for (std::int64_t k = 0; k < d; ++k) {
    const std::int64_t w = w0 + k * nd;
    std::vector<int> coset(members.begin(), members.begin() + base);
    for (int i = 1; i < m; ++i)
      for (std::size_t j = 0; j < base; ++j) {
        const int x = G.mul(coset[(i - 1) * base + j], g);
        coset.push_back(x);
        val[x] = mod(val[coset[j]] + i * w, n);
      }
    std::vector<int> next(coset);
    extend(G, val, next, out);
    for (std::size_t j = base; j < coset.size(); ++j) val[coset[j]] = -1;
  }
}

}  // namespace

std::vector<std::vector<std::int64_t>> extend_characters(const AbelianGroup& g, std::vector<std::int64_t> sub_values) {
  if (static_cast<int>(sub_values.size()) != g.n) throw std::invalid_argument("extend_characters: size mismatch");
  if (sub_values[0] != 0) throw std::invalid_argument("extend_characters: identity must map to exponent 0");
  std::vector<int> members;
  for (int i = 0; i < g.n; ++i)
    if (sub_values[i] >= 0) members.push_back(i);
  std::vector<std::vector<std::int64_t>> out;
  extend(g, sub_values, members, out);
  return out;
}

std::vector<std::vector<std::int64_t>> all_characters(const AbelianGroup& g) {
  std::vector<std::int64_t> v(g.n, -1);
  v[0] = 0;
  return extend_characters(g, std::move(v));
}

}  // namespace dgw
