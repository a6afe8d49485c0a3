// Copyright 2026 The qfree Authors
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

#include "qfree/kernels.h"

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "qfree/common.h"

namespace qfree::kernels {
namespace {

const Table *table_for(Isa isa) {
    switch (isa) {
        case Isa::kScalar:
            return &scalar_table();
        case Isa::kAvx2:
            return cpu_supports(Isa::kAvx2) ? avx2_table() : nullptr;
    }
    return nullptr;
}

const Table *initial_table() {
    if (const char *env = std::getenv("QFREE_ISA")) {
        std::string_view want(env);
        if (want == "scalar") {
            return &scalar_table();
        }
        if (want == "avx2" && table_for(Isa::kAvx2) != nullptr) {
            return table_for(Isa::kAvx2);
        }
    }
    if (const Table *t = table_for(Isa::kAvx2)) {
        return t;
    }
    return &scalar_table();
}

std::atomic<const Table *> &slot() {
    static std::atomic<const Table *> s{initial_table()};
    return s;
}

}  // namespace

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::kScalar:
            return true;
        case Isa::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
            return avx2_table() != nullptr && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

const Table &active() {
    return *slot().load(std::memory_order_relaxed);
}

void force(Isa isa) {
    const Table *t = table_for(isa);
    if (t == nullptr) {
        throw InputError("requested kernel ISA is not available on this machine");
    }
    slot().store(t, std::memory_order_relaxed);
}

}  // namespace qfree::kernels
