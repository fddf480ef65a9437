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

#include "cli/parse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "qwhit/error.hpp"

namespace qwhit::cli {
namespace {

constexpr double kRescaleWindow = 1e-6;

double parse_real(std::string_view text, std::size_t& pos) {
  double value = 0.0;
  const char* begin = text.data() + pos;
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || !std::isfinite(value)) {
    throw_invalid("cannot parse number in '" + std::string(text) + "'");
  }
  pos = static_cast<std::size_t>(ptr - text.data());
  return value;
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw_invalid("seed must be a nonnegative integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&flag](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

}  // namespace

Complex parse_complex(std::string_view text) {
  if (text.empty()) throw_invalid("empty complex number");
  std::size_t pos = 0;
  const double first = parse_real(text, pos);
  if (pos == text.size()) return {first, 0.0};
  if (text[pos] == 'i' && pos + 1 == text.size()) return {0.0, first};
  if (text[pos] != '+' && text[pos] != '-') throw_invalid("cannot parse complex number '" + std::string(text) + "'");
  const double second = parse_real(text, pos);
  if (pos + 1 != text.size() || text[pos] != 'i') {
    throw_invalid("cannot parse complex number '" + std::string(text) + "'");
  }
  return {first, second};
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t stop = std::min(text.find(sep, start), text.size());
    out.emplace_back(text.substr(start, stop - start));
    start = stop + 1;
  }
  return out;
}

Coin parse_coin(std::string_view text) {
  if (text == "hadamard") return Coin::hadamard();
  Coin coin{0.0, 0.0, 0.0};
  bool seen_a = false;
  bool seen_b = false;
  bool seen_theta = false;
  for (const std::string& field : split_list(text)) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw_invalid("coin field '" + field + "' is not key=value");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "a") {
      coin.a = parse_complex(value);
      seen_a = true;
    } else if (key == "b") {
      coin.b = parse_complex(value);
      seen_b = true;
    } else if (key == "theta") {
      std::size_t pos = 0;
      coin.theta = parse_real(value, pos);
      if (pos != value.size()) throw_invalid("cannot parse theta '" + value + "'");
      seen_theta = true;
    } else {
      throw_invalid("unknown coin field '" + key + "'");
    }
  }
  if (!seen_a || !seen_b || !seen_theta) throw_invalid("coin needs a, b and theta (or 'hadamard')");
  const double norm = std::sqrt(std::norm(coin.a) + std::norm(coin.b));
  if (std::abs(norm - 1.0) <= kRescaleWindow) {
    coin.a /= norm;
    coin.b /= norm;
  }
  coin.validate();
  return coin;
}

InitialState parse_init(std::string_view text) {
  const auto parts = split_list(text, ':');
  const std::string& kind = parts.front();
  if (kind == "basis") {
    if (parts.size() != 3) throw_invalid("basis init is basis:<position>:L|R");
    std::size_t pos = 0;
    const double k = parse_real(parts[1], pos);
    if (pos != parts[1].size() || k != std::floor(k)) throw_invalid("basis position must be an integer");
    Direction d;
    if (parts[2] == "L") {
      d = Direction::kLeft;
    } else if (parts[2] == "R") {
      d = Direction::kRight;
    } else {
      throw_invalid("basis direction must be L or R");
    }
    return InitialState::basis(static_cast<int>(k), d);
  }
  if (kind == "random" || kind == "random-real") {
    if (parts.size() != 2) throw_invalid(kind + " init is " + kind + ":<seed>");
    return InitialState::random(parse_seed(parts[1]), kind == "random-real");
  }
  if (kind == "amps") {
    if (parts.size() != 2) throw_invalid("amps init is amps:<c0>,<c1>,...");
    std::vector<Complex> amps;
    double norm2 = 0.0;
    for (const std::string& c : split_list(parts[1])) {
      amps.push_back(parse_complex(c));
      norm2 += std::norm(amps.back());
    }
    const double norm = std::sqrt(norm2);
    if (std::abs(norm - 1.0) <= kRescaleWindow) {
      for (Complex& c : amps) c /= norm;
    }
    return InitialState::from_amplitudes(std::move(amps));
  }
  throw_invalid("unknown init '" + std::string(text) + "'");
}

CoinConstraint parse_constraint(std::string_view text) {
  if (text == "unitary") return CoinConstraint::kUnitary;
  if (text == "modulus-sum") return CoinConstraint::kModulusSum;
  throw_invalid("constraint must be unitary or modulus-sum");
}

void merge_config(std::vector<std::string>& args, const nlohmann::ordered_json& config) {
  if (!config.is_object()) throw_invalid("config file must hold a flat JSON object");
  for (const auto& [key, value] : config.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back(flag);
      args.push_back(value.dump());
    } else {
      throw_invalid("config key '" + key + "' must be a string, number or boolean");
    }
  }
}

void apply_config_file(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw_invalid("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw_invalid("cannot open config file '" + path + "'");
  nlohmann::ordered_json config;
  try {
    config = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw_invalid("config file '" + path + "': " + e.what());
  }
  merge_config(args, config);
}

nlohmann::ordered_json complex_json(Complex z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

nlohmann::ordered_json coin_json(const Coin& coin) {
  return {{"a", complex_json(coin.a)}, {"b", complex_json(coin.b)}, {"theta", coin.theta}};
}

int qubit_budget_from_env() {
  const char* raw = std::getenv("QWHIT_BUDGET_QUBITS");
  if (raw == nullptr || *raw == '\0') return 26;
  int value = 0;
  const std::string_view text(raw);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    throw_invalid("QWHIT_BUDGET_QUBITS must be a positive integer");
  }
  return value;
}

}  // namespace qwhit::cli
