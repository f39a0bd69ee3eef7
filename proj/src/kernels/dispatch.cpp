#include <cstdlib>
#include <string>

#include "af/kernels.hpp"

namespace af::kernels {

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa pick() {
  if (const char* env = std::getenv("AF_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == isa_name(isa) && table_for(isa)) return isa;
    }
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (table_for(isa)) return isa;
  }
  return Isa::Scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const Table* table_for(Isa isa) {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::Scalar: return &scalar_table();
    case Isa::Avx2: return avx2_table();
    case Isa::Neon: return neon_table();
  }
  return nullptr;
}

Isa active_isa() {
  static const Isa isa = pick();
  return isa;
}

const Table& active() {
  static const Table& t = *table_for(active_isa());
  return t;
}

}  // namespace af::kernels
