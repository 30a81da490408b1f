#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "folia/gaussian.hpp"

namespace folia::cli {

using json = nlohmann::ordered_json;

struct InputDigest {
  std::string path;
  std::string sha256;

  friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

struct ErrorInfo {
  std::string code;  // snake_case library code, or parse / usage / io
  std::string message;
  std::optional<std::size_t> line, column;

  friend bool operator==(const ErrorInfo&, const ErrorInfo&) = default;
};

struct Report {
  std::string command;
  std::vector<InputDigest> inputs;
  std::uint64_t seed = 0;
  json result = json::object();
  json residuals = json::object();
  json timings = json::object();  // empty unless requested
  std::string verdict = "error";  // pass | fail | error
  std::optional<ErrorInfo> error;

  int exit_code() const;
  friend bool operator==(const Report&, const Report&) = default;
};

json to_json(const Report& r);
Report report_from_json(const json& j);

std::string render_json(const Report& r);  // pretty, trailing newline
std::string render_text(const Report& r);

// {re, im} as %.17g strings.
json complex_json(std::complex<double> z);
std::complex<double> complex_from_json(const json& j);
std::string exact_json(const GaussianRational& g);  // "p/q" or "(a + b*i)"
std::string format_double(double x);

std::string sha256_hex(const std::string& bytes);

}  // namespace folia::cli
