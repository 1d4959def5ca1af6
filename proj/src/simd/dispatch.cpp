#include <cstdlib>
#include <string>

#include "iwave/simd/kernels.hpp"

namespace iwave::simd {
namespace {

Isa select_isa() {
  if (const char* env = std::getenv("IWAVE_SIMD")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  if (avx2_kernels() != nullptr && cpu_has_avx2()) return Isa::avx2;
  return Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

const KernelTable& kernels() {
  static const KernelTable& table =
      active_isa() == Isa::avx2 ? *avx2_kernels() : scalar_kernels();
  return table;
}

}  // namespace iwave::simd
