#include "rsedge/sturm.hpp"

namespace rsedge::kernels {

namespace {

SturmCountsFn g_forced = nullptr;

SturmCountsFn detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return sturm_counts_avx2;
#endif
    return sturm_counts_scalar;
}

} // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

SturmCountsFn active_sturm_kernel() {
    if (g_forced != nullptr) return g_forced;
    static SturmCountsFn detected = detect();
    return detected;
}

void force_sturm_kernel(SturmCountsFn fn) { g_forced = fn; }

std::string active_sturm_kernel_name() {
    SturmCountsFn fn = active_sturm_kernel();
#if defined(__x86_64__) || defined(_M_X64)
    if (fn == sturm_counts_avx2) return "avx2";
#endif
    if (fn == sturm_counts_scalar) return "scalar";
    return "custom";
}

} // namespace rsedge::kernels
