#include "kernel_backends.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#endif

#if defined(__aarch64__) && defined(__linux__)
#include <sys/auxv.h>
#ifndef HWCAP_ASIMDDP
#define HWCAP_ASIMDDP (1 << 20)
#endif
#endif

#if defined(__aarch64__) && defined(__APPLE__)
#include <sys/sysctl.h>
#endif

namespace litespark::detail {

#if defined(__x86_64__) || defined(_M_X64)

namespace {

struct X86Features {
  bool avx512vnni = false;
  bool avxvnni = false;
  bool avx512vl = false;
};

uint64_t read_xcr0() {
  uint32_t eax, edx;
  __asm__ volatile("xgetbv" : "=a"(eax), "=d"(edx) : "c"(0));
  return (static_cast<uint64_t>(edx) << 32) | eax;
}

X86Features probe_x86() {
  X86Features f;
  unsigned int eax, ebx, ecx, edx;
  if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return f;
  const bool osxsave = (ecx & (1u << 27)) != 0;
  if (!osxsave) return f;

  const uint64_t xcr0 = read_xcr0();
  const bool os_ymm = (xcr0 & 0x6) == 0x6;          // XMM + YMM state
  const bool os_zmm = (xcr0 & 0xe6) == 0xe6;        // plus opmask + ZMM state

  if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return f;
  const bool avx512f = (ebx & (1u << 16)) != 0;
  const bool avx512bw = (ebx & (1u << 30)) != 0;
  f.avx512vl = os_zmm && (ebx & (1u << 31)) != 0;
  f.avx512vnni = os_zmm && avx512f && avx512bw && (ecx & (1u << 11)) != 0;

  if (__get_cpuid_count(7, 1, &eax, &ebx, &ecx, &edx))
    f.avxvnni = os_ymm && (eax & (1u << 4)) != 0;
  return f;
}

const X86Features& x86_features() {
  static const X86Features f = probe_x86();
  return f;
}

}  // namespace

bool cpu_has_avx512vnni() { return x86_features().avx512vnni; }
bool cpu_has_avxvnni_vex() { return x86_features().avxvnni; }
bool cpu_has_avx512vl() { return x86_features().avx512vl; }
bool cpu_has_neon_dotprod() { return false; }

#elif defined(__aarch64__) || defined(_M_ARM64)

bool cpu_has_avx512vnni() { return false; }
bool cpu_has_avxvnni_vex() { return false; }
bool cpu_has_avx512vl() { return false; }

bool cpu_has_neon_dotprod() {
#if defined(__linux__)
  static const bool has = (getauxval(AT_HWCAP) & HWCAP_ASIMDDP) != 0;
  return has;
#elif defined(__APPLE__)
  static const bool has = [] {
    int value = 0;
    size_t size = sizeof(value);
    if (sysctlbyname("hw.optional.arm.FEAT_DotProd", &value, &size, nullptr, 0) == 0)
      return value != 0;
    return false;
  }();
  return has;
#else
#if defined(__ARM_FEATURE_DOTPROD)
  return true;  // baked into the build target
#else
  return false;
#endif
#endif
}

#else

bool cpu_has_avx512vnni() { return false; }
bool cpu_has_avxvnni_vex() { return false; }
bool cpu_has_avx512vl() { return false; }
bool cpu_has_neon_dotprod() { return false; }

#endif

}  // namespace litespark::detail
