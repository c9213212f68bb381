#include <algorithm>
#include <numeric>

#include "aegdm/error.hpp"
#include "aegdm/problems.hpp"

namespace aegdm {

std::vector<std::size_t> b_minibatch_ids(std::size_t m, std::size_t b, Rng& rng) {
  if (b < 1 || b > m) {
    throw InvalidBatch("b-minibatch requires 1 <= b <= m (b=" + std::to_string(b) + ", m=" + std::to_string(m) + ")");
  }
  std::vector<std::size_t> population(m);
  std::iota(population.begin(), population.end(), std::size_t{0});
  if (b == m) return population;
  std::vector<std::size_t> ids;
  ids.reserve(b);
  // selection sampling keeps the output sorted
  std::sample(population.begin(), population.end(), std::back_inserter(ids), b, rng);
  return ids;
}

Vector sampling_vector(std::size_t m, const std::vector<std::size_t>& ids) {
  if (ids.empty() || ids.size() > m) {
    throw InvalidBatch("subset size must satisfy 1 <= b <= m");
  }
  const double weight = static_cast<double>(m) / static_cast<double>(ids.size());
  Vector xi = Vector::Zero(static_cast<Index>(m));
  for (std::size_t j : ids) {
    if (j >= m) throw InvalidBatch("sample id out of range");
    xi[static_cast<Index>(j)] = weight;
  }
  return xi;
}

Vector b_minibatch_sample(std::size_t m, std::size_t b, Rng& rng) {
  return sampling_vector(m, b_minibatch_ids(m, b, rng));
}

}  // namespace aegdm
