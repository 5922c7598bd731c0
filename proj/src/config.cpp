// Copyright 2026 The qstab Authors
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

#include "qstab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qstab/csv.hpp"
#include "qstab/numkit.hpp"
#include "qstab/spin.hpp"

namespace qstab::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const std::string& why) {
  std::ostringstream msg;
  msg << "invalid value '" << value << "' for " << key << ": " << why;
  throw ValidationError(msg.str());
}

// term := number | "pi" | "sqrt(" expr ")"
// expr := term (('*' | '/') term)*
class RealParser {
 public:
  explicit RealParser(std::string_view text) : s_(text) {}

  double parse() {
    const double v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing characters");
    return v;
  }

 private:
  double expr() {
    double v = term();
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
        const char op = s_[pos_++];
        const double rhs = term();
        v = op == '*' ? v * rhs : v / rhs;
      } else {
        return v;
      }
    }
  }

  double term() {
    skip_ws();
    if (consume("pi")) return std::numbers::pi;
    if (consume("sqrt(")) {
      const double inner = expr();
      skip_ws();
      if (!consume(")")) fail("missing ')'");
      if (inner < 0.0) fail("sqrt of a negative number");
      return std::sqrt(inner);
    }
    double v = 0.0;
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  bool consume(std::string_view token) {
    if (s_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  [[noreturn]] void fail(const char* why) const {
    std::ostringstream msg;
    msg << "cannot parse '" << s_ << "' as a real number: " << why;
    throw ValidationError(msg.str());
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::size_t parse_count(std::string_view key, std::string_view value) {
  std::size_t v = 0;
  const auto t = trim(value);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    bad_value(key, value, "expected a nonnegative integer");
  }
  return v;
}

std::string render_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    out += format_real(xs[i]);
  }
  return out;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

std::string_view experiment_name(Experiment e) {
  switch (e) {
    case Experiment::kFig1a: return "fig1a";
    case Experiment::kFig1b: return "fig1b";
    case Experiment::kFig2: return "fig2";
    case Experiment::kOsc: return "osc";
    case Experiment::kMarkov: return "markov";
    case Experiment::kAlphaSweep: return "alpha-sweep";
    case Experiment::kBoundsTable: return "bounds-table";
  }
  return "unknown";
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> all{Experiment::kFig1a,  Experiment::kFig1b,
                                           Experiment::kFig2,   Experiment::kOsc,
                                           Experiment::kMarkov, Experiment::kAlphaSweep,
                                           Experiment::kBoundsTable};
  return all;
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (auto e : all_experiments()) {
    if (experiment_name(e) == name) return e;
  }
  return std::nullopt;
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  cfg.beta = 3.0;
  cfg.p = std::numbers::pi / 2.0;
  cfg.tau = 1.0;
  // Settings shared by the coupled experiments; overwritten below where a
  // figure uses something else.
  cfg.j = 25.0;
  cfg.theta = 2.0;
  cfg.phi = 1.4;
  cfg.alpha = 0.01;
  cfg.epsilon = 0.0;
  cfg.d = kInvSqrt2;
  cfg.d_prime = 1.0;
  cfg.n_kicks = 1000;
  cfg.grid = 32;
  cfg.c = {kInvSqrt2, kInvSqrt2};
  cfg.c_prime = {1.0, 0.0};
  cfg.alphas = {0.04, 0.02, 0.01, 0.005};
  cfg.threshold = 0.95;

  switch (e) {
    case Experiment::kFig1a:
    case Experiment::kFig1b:
      cfg.j = 100.0;
      cfg.epsilon = 0.01;
      cfg.alpha = 0.0;
      cfg.theta = e == Experiment::kFig1a ? 2.5 : 1.5;
      cfg.phi = 1.0;
      break;
    case Experiment::kFig2:
    case Experiment::kOsc:
      break;
    case Experiment::kMarkov:
      cfg.j = 10.0;
      cfg.alpha = 0.05;
      cfg.n_kicks = 500;
      break;
    case Experiment::kAlphaSweep:
      cfg.n_kicks = 2000;
      break;
    case Experiment::kBoundsTable:
      cfg.grid = 11;
      cfg.n_kicks = 10;
      break;
  }
  return cfg;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "j",     "beta",    "p",       "tau",  "epsilon", "alpha",   "theta",  "phi",
      "d",     "d_prime", "n_kicks", "grid", "c",       "c_prime", "alphas", "threshold"};
  return keys;
}

double parse_real(std::string_view text) {
  const double v = RealParser(trim(text)).parse();
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "'" << text << "' does not evaluate to a finite number";
    throw ValidationError(msg.str());
  }
  return v;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  const auto t = trim(text);
  if (t.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto sep = t.find_first_of(",;", start);
    out.push_back(parse_real(t.substr(start, sep == std::string_view::npos ? sep : sep - start)));
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  return out;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  auto real = [&](double& field) {
    try {
      field = parse_real(value);
    } catch (const ValidationError& e) {
      bad_value(key, value, e.what());
    }
  };
  auto list = [&](std::vector<double>& field) {
    try {
      field = parse_real_list(value);
    } catch (const ValidationError& e) {
      bad_value(key, value, e.what());
    }
  };

  if (key == "j") real(cfg.j);
  else if (key == "beta") real(cfg.beta);
  else if (key == "p") real(cfg.p);
  else if (key == "tau") real(cfg.tau);
  else if (key == "epsilon") real(cfg.epsilon);
  else if (key == "alpha") real(cfg.alpha);
  else if (key == "theta") real(cfg.theta);
  else if (key == "phi") real(cfg.phi);
  else if (key == "d") real(cfg.d);
  else if (key == "d_prime") real(cfg.d_prime);
  else if (key == "n_kicks") cfg.n_kicks = parse_count(key, value);
  else if (key == "grid") cfg.grid = parse_count(key, value);
  else if (key == "c") list(cfg.c);
  else if (key == "c_prime") list(cfg.c_prime);
  else if (key == "alphas") list(cfg.alphas);
  else if (key == "threshold") real(cfg.threshold);
  else {
    std::ostringstream msg;
    msg << "unknown configuration key '" << key << "'";
    throw ValidationError(msg.str());
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path.string() + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream msg;
      msg << path.string() << ":" << lineno << ": expected 'key = value'";
      throw ValidationError(msg.str());
    }
    try {
      apply_setting(cfg, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    } catch (const ValidationError& e) {
      std::ostringstream msg;
      msg << path.string() << ":" << lineno << ": " << e.what();
      throw ValidationError(msg.str());
    }
  }
}

void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ValidationError(msg); };
  (void)spin::SpinJ::from_double(cfg.j);
  if (!(cfg.tau > 0.0)) fail("tau must be positive");
  if (std::abs(cfg.d) > 1.0) fail("|d| must not exceed 1");
  if (std::abs(cfg.d_prime) > 1.0) fail("|d_prime| must not exceed 1");
  switch (cfg.experiment) {
    case Experiment::kFig1a:
    case Experiment::kFig2:
    case Experiment::kOsc:
    case Experiment::kMarkov:
      if (cfg.n_kicks < 1) fail("n_kicks must be at least 1");
      break;
    case Experiment::kFig1b:
      if (cfg.n_kicks < 1) fail("n_kicks must be at least 1");
      if (cfg.grid < 1) fail("grid must have at least one point");
      break;
    case Experiment::kAlphaSweep:
      if (cfg.n_kicks < 1) fail("n_kicks must be at least 1");
      if (cfg.alphas.empty()) fail("alphas must list at least one value");
      if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
        fail("threshold must lie strictly between 0 and 1");
      }
      break;
    case Experiment::kBoundsTable:
      if (cfg.grid < 2) fail("grid must have at least two points");
      if (cfg.n_kicks < 1) fail("n_kicks must be at least 1");
      break;
  }
}

std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& cfg) {
  return {
      {"j", format_real(cfg.j)},
      {"beta", format_real(cfg.beta)},
      {"p", format_real(cfg.p)},
      {"tau", format_real(cfg.tau)},
      {"epsilon", format_real(cfg.epsilon)},
      {"alpha", format_real(cfg.alpha)},
      {"theta", format_real(cfg.theta)},
      {"phi", format_real(cfg.phi)},
      {"d", format_real(cfg.d)},
      {"d_prime", format_real(cfg.d_prime)},
      {"n_kicks", std::to_string(cfg.n_kicks)},
      {"grid", std::to_string(cfg.grid)},
      {"c", render_list(cfg.c)},
      {"c_prime", render_list(cfg.c_prime)},
      {"alphas", render_list(cfg.alphas)},
      {"threshold", format_real(cfg.threshold)},
  };
}

}  // namespace qstab::cli
