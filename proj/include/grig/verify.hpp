#pragma once

// Verification suites behind `grig verify`.

#include <string>
#include <vector>

#include <json.hpp>

#include "grig/word.hpp"

namespace grig {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double runtime_seconds = 0.0;

  bool pass() const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  OmegaWord omega = OmegaWord::parse("(012)*");
  std::size_t m = 3;       // contraction levels 1..m
  std::size_t k = 3;       // eta words 0..k
  std::size_t radius = 6;  // product compatibility radius
};

SuiteReport verify_matrix_relations();
SuiteReport verify_contraction(const VerifyOptions& options);
SuiteReport verify_eta(const VerifyOptions& options);
SuiteReport verify_product_compat(const VerifyOptions& options);

const std::vector<std::string>& suite_names();

/// "all" runs every suite; throws std::invalid_argument on an unknown name.
std::vector<SuiteReport> run_suite(const std::string& name, const VerifyOptions& options);

}  // namespace grig
