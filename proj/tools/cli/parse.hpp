// Copyright 2026 The qwhit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qwhit/kappa.hpp"
#include "qwhit/reduction.hpp"
#include "qwhit/walk.hpp"

namespace qwhit::cli {

/// "1.5", "-0.25i", "0.3+0.4i", "0.3-0.4i".
Complex parse_complex(std::string_view text);

/// "hadamard" or "a=<complex>,b=<complex>,theta=<real>". (a, b) within 1e-6
/// of unit norm is rescaled onto it; anything further off is rejected.
Coin parse_coin(std::string_view text);

/// "basis:<k>:L|R", "random:<seed>", "random-real:<seed>",
/// "amps:<c0>,<c1>,..." (transient layout, rescaled like the coin).
InitialState parse_init(std::string_view text);

/// Comma-separated list, e.g. "iterate,direct,cgnr".
std::vector<std::string> split_list(std::string_view text, char sep = ',');

CoinConstraint parse_constraint(std::string_view text);

/// Appends "--key value" for every config-file key whose flag is absent from
/// `args`. true booleans become bare flags; false ones are dropped.
void merge_config(std::vector<std::string>& args, const nlohmann::ordered_json& config);

/// Finds "--config PATH" / "--config=PATH" and splices the file's keys in.
void apply_config_file(std::vector<std::string>& args);

nlohmann::ordered_json coin_json(const Coin& coin);
nlohmann::ordered_json complex_json(Complex z);

/// QWHIT_BUDGET_QUBITS, default 26.
int qubit_budget_from_env();

}  // namespace qwhit::cli
