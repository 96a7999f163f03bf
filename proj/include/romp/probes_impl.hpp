#pragma once

#include <algorithm>

#include "romp/rng.hpp"

namespace romp {

template <typename Stat>
FittedConstant bootstrap(const std::vector<double>& sample, Stat statistic, Seed seed,
                         int resamples) {
  FittedConstant out;
  out.value = statistic(sample);
  if (sample.empty() || resamples <= 0) {
    out.ci_low = out.ci_high = out.value;
    return out;
  }
  Rng rng(seed);
  std::vector<double> draws;
  draws.reserve(static_cast<std::size_t>(resamples));
  std::vector<double> resample(sample.size());
  for (int b = 0; b < resamples; ++b) {
    for (auto& v : resample) v = sample[rng.below(sample.size())];
    draws.push_back(statistic(resample));
  }
  out.ci_low = empirical_quantile(draws, 0.025);
  out.ci_high = empirical_quantile(std::move(draws), 0.975);
  return out;
}

}  // namespace romp
