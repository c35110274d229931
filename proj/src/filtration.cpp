#include "fmlinv/filtration.hpp"

#include <algorithm>
#include <stdexcept>

namespace fmlinv {

Filtration::Filtration(std::size_t ambient, std::vector<FiltrationStep> steps)
    : ambient_(ambient), steps_(std::move(steps)) {}

Filtration Filtration::from_function(std::size_t ambient, long lo, long hi, const std::function<Subspace(long)>& at) {
  if (lo > hi) throw std::invalid_argument("empty filtration range");
  std::vector<Subspace> values;
  values.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long i = lo; i <= hi; ++i) values.push_back(at(i));
  if (!values.front().is_full() || !values.back().is_zero())
    throw std::invalid_argument("filtration range must start at the whole space and end at zero");

  // Largest index where the space is still everything.
  std::size_t first = 0;
  while (first + 1 < values.size() && values[first + 1].is_full()) ++first;
  std::vector<FiltrationStep> steps;
  steps.push_back({lo + static_cast<long>(first), values[first]});
  for (std::size_t k = first + 1; k < values.size(); ++k) {
    if (values[k] != steps.back().space) steps.push_back({lo + static_cast<long>(k), values[k]});
  }
  return Filtration(ambient, std::move(steps));
}

Filtration Filtration::pure(std::size_t ambient, long weight) {
  return Filtration(ambient, {{weight, Subspace::full(ambient)}, {weight + 1, Subspace::zero(ambient)}});
}

Subspace Filtration::at(long i) const {
  const Subspace* current = nullptr;
  for (const auto& step : steps_) {
    if (step.jump > i) break;
    current = &step.space;
  }
  return current == nullptr ? Subspace::full(ambient_) : *current;
}

std::vector<long> Filtration::levels() const {
  std::vector<long> out;
  out.reserve(steps_.size());
  for (const auto& s : steps_) out.push_back(s.jump);
  return out;
}

long Filtration::lowest_level() const {
  if (steps_.empty()) throw std::logic_error("filtration has no listed steps");
  return steps_.front().jump;
}

long Filtration::highest_level() const {
  if (steps_.empty()) throw std::logic_error("filtration has no listed steps");
  return steps_.back().jump;
}

Filtration Filtration::canonical() const {
  if (ambient_ == 0) return Filtration(0, {});
  return from_function(ambient_, lowest_level() - 1, highest_level(), [this](long i) { return at(i); });
}

std::vector<long> jump_multiset(const std::vector<long>& levels, std::size_t total,
                                const std::function<std::size_t(long)>& dim_at) {
  std::vector<long> weights;
  std::size_t previous = total;
  for (long level : levels) {
    const std::size_t current = dim_at(level);
    if (current > previous) throw std::logic_error("filtration is not descending");
    weights.insert(weights.end(), previous - current, level - 1);
    previous = current;
  }
  if (previous != 0) throw std::logic_error("filtration is not separated");
  std::sort(weights.begin(), weights.end());
  return weights;
}

}  // namespace fmlinv
