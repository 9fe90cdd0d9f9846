// Copyright 2026 The dyncirc Authors
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

#ifndef DYNCIRC_BUILDERS_H
#define DYNCIRC_BUILDERS_H

#include <string_view>

#include "dyncirc/circuit.h"

namespace dyncirc {

enum class DynamicMode { FeedForward, PostProcess };
enum class CnotVariant { Ia, Ib, Ic, II };

DynamicMode mode_from_name(std::string_view name);
std::string_view mode_name(DynamicMode m);
CnotVariant variant_from_name(std::string_view name);
std::string_view variant_name(CnotVariant v);

/// CNOT from qubit 0 to qubit n+1 through n ancillas, by measurement and
/// feed-forward. Returned scheduled.
Circuit long_range_cnot_dynamic(uint32_t n_ancillas, DynamicMode mode = DynamicMode::FeedForward,
                                double mu = 0);

/// Unitary long-range CNOT. `size` is n ancillas for Ia/Ib/Ic and the
/// number of intermediate (occupied) qubits for II.
Circuit long_range_cnot_unitary(CnotVariant variant, uint32_t size);

Circuit ghz_unitary(uint32_t n);
Circuit ghz_dynamic(uint32_t n, DynamicMode mode = DynamicMode::FeedForward, double mu = 0);

/// CCZ between qubits A, B, C separated by n ancillas in total.
/// inputs/outputs hold (A, B, C).
Circuit ccz_dynamic(uint32_t n_ancillas, double mu = 0);

}  // namespace dyncirc

#endif
