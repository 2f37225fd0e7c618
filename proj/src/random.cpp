#include "qtree/random.hpp"

#include <vector>

namespace qtree {

Distribution random_distribution(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = open_unit(rng);
    total += x;
  }
  for (double& x : w) x /= total;
  return Distribution(std::move(w));
}

}  // namespace qtree
