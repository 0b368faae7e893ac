/*
 * Copyright 2026 The fecam-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <cstdlib>
#include <string>

#include "fecam/kernels/kernels.hpp"

namespace fecam::kernels {

#if defined(FECAM_HAVE_AVX2)
const KernelTable* avx2_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(FECAM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& select_kernels() {
    const char* requested = std::getenv("FECAM_KERNELS");
    if (requested != nullptr && std::string(requested) == "scalar") return scalar_kernels();
    if (const KernelTable* avx2 = kernels_for(Isa::Avx2)) return *avx2;
    return scalar_kernels();
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

const KernelTable* kernels_for(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return &scalar_kernels();
        case Isa::Avx2:
#if defined(FECAM_HAVE_AVX2)
            if (cpu_has_avx2()) return avx2_table();
#endif
            return nullptr;
    }
    return nullptr;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> isas{Isa::Scalar};
    if (kernels_for(Isa::Avx2) != nullptr) isas.push_back(Isa::Avx2);
    return isas;
}

const KernelTable& active_kernels() {
    static const KernelTable& table = select_kernels();
    return table;
}

}  // namespace fecam::kernels
