// Copyright 2026 The starfab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace starfab {

// splitmix64 finalizer; a stable bijective mixer for seed derivation.
std::uint64_t mix64(std::uint64_t x);

// Seed for the index-th child of `seed` (e.g. trial index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
// Seed for a named substream of `seed` (e.g. "failures", "noise").
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);

// Deterministic generator: mt19937_64 plus hand-rolled variate transforms so
// sampled values do not depend on the standard library's distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer on [0, n); n > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  // Exponential with the given rate (> 0).
  double exponential(double rate);
  bool bernoulli(double p) { return uniform() < p; }

  Rng substream(std::string_view name) const { return Rng(derive_seed(seed_, name)); }

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace starfab
