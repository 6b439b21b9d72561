#pragma once

#include <cstdint>
#include <random>

namespace hv {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  // Uniform on [lo, hi]; modulo reduction keeps output identical across standard libraries.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(g_() % span);
  }
  bool chance(std::uint32_t num, std::uint32_t den) { return g_() % den < num; }
  std::uint64_t next() { return g_(); }

 private:
  std::mt19937_64 g_;
};

}  // namespace hv
