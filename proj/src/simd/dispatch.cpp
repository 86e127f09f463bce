#include "casimir/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace casimir::simd {

#ifndef CASIMIR_HAVE_AVX2
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

bool cpu_supports_avx2() noexcept {
#if defined(CASIMIR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Level detect_level() noexcept {
  const bool avx2_ok = avx2_table() != nullptr && cpu_supports_avx2();
  if (const char* env = std::getenv("CASIMIR_SIMD")) {
    const std::string_view req{env};
    if (req == "scalar") return Level::scalar;
    if (req == "avx2" && avx2_ok) return Level::avx2;
  }
  return avx2_ok ? Level::avx2 : Level::scalar;
}

std::atomic<Level>& current() noexcept {
  static std::atomic<Level> level{detect_level()};
  return level;
}

}  // namespace

Level active_level() noexcept { return current().load(std::memory_order_relaxed); }

bool set_level(Level level) noexcept {
  if (level == Level::avx2 && (avx2_table() == nullptr || !cpu_supports_avx2())) return false;
  current().store(level, std::memory_order_relaxed);
  return true;
}

std::string_view level_name(Level level) noexcept {
  switch (level) {
    case Level::scalar: return "scalar";
    case Level::avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& active() noexcept {
  if (active_level() == Level::avx2) return *avx2_table();
  return scalar_table();
}

}  // namespace casimir::simd
