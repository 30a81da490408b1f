#include "cli/report.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "cli/job.hpp"

namespace folia::cli {

int Report::exit_code() const {
  return exit_code_for(verdict, error ? std::optional<std::string>(error->code) : std::nullopt);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json complex_json(std::complex<double> z) {
  // Signed zeros are folded so that reports do not depend on rounding noise.
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  return json{{"re", format_double(re)}, {"im", format_double(im)}};
}

std::complex<double> complex_from_json(const json& j) {
  return {std::stod(j.at("re").get<std::string>()), std::stod(j.at("im").get<std::string>())};
}

std::string exact_json(const GaussianRational& g) {
  if (g.is_real()) return g.re().get_str();
  return to_string(g);
}

json to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  json inputs = json::array();
  for (const auto& in : r.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
  j["inputs"] = inputs;
  j["seed"] = r.seed;
  j["result"] = r.result;
  j["residuals"] = r.residuals;
  if (!r.timings.empty()) j["timings"] = r.timings;
  j["verdict"] = r.verdict;
  if (r.error) {
    json e{{"code", r.error->code}, {"message", r.error->message}};
    if (r.error->line) e["line"] = *r.error->line;
    if (r.error->column) e["column"] = *r.error->column;
    j["error"] = e;
  }
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  for (const auto& in : j.at("inputs")) r.inputs.push_back({in.at("path"), in.at("sha256")});
  r.seed = j.at("seed").get<std::uint64_t>();
  r.result = j.at("result");
  r.residuals = j.at("residuals");
  if (j.contains("timings")) r.timings = j.at("timings");
  r.verdict = j.at("verdict").get<std::string>();
  if (j.contains("error")) {
    const auto& e = j.at("error");
    ErrorInfo info{e.at("code"), e.at("message"), std::nullopt, std::nullopt};
    if (e.contains("line")) info.line = e.at("line").get<std::size_t>();
    if (e.contains("column")) info.column = e.at("column").get<std::size_t>();
    r.error = info;
  }
  return r;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

namespace {

bool is_complex(const json& v) {
  return v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im") && v["re"].is_string();
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (is_complex(v)) {
    std::ostringstream os;
    const auto z = complex_from_json(v);
    os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
  }
  return v.dump();
}

void text_lines(std::ostringstream& os, const json& v, const std::string& indent) {
  for (const auto& [key, value] : v.items()) {
    if (value.is_object() && !is_complex(value)) {
      os << indent << key << ":\n";
      text_lines(os, value, indent + "  ");
    } else if (value.is_array() && !value.empty() && (value.front().is_object() || value.front().is_array()) &&
               !is_complex(value.front())) {
      os << indent << key << ":\n";
      std::size_t k = 0;
      for (const auto& item : value) {
        os << indent << "  [" << k++ << "]\n";
        if (item.is_object()) {
          text_lines(os, item, indent + "    ");
        } else {
          os << indent << "    ";
          for (std::size_t i = 0; i < item.size(); ++i) os << (i ? ", " : "") << scalar_text(item[i]);
          os << "\n";
        }
      }
    } else if (value.is_array()) {
      os << indent << key << ": ";
      for (std::size_t k = 0; k < value.size(); ++k) os << (k ? ", " : "") << scalar_text(value[k]);
      os << "\n";
    } else {
      os << indent << key << ": " << scalar_text(value) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  for (const auto& in : r.inputs) os << "input: " << in.path << " (sha256 " << in.sha256.substr(0, 16) << ")\n";
  text_lines(os, r.result, "");
  if (!r.residuals.empty()) {
    os << "residuals:\n";
    text_lines(os, r.residuals, "  ");
  }
  if (!r.timings.empty()) {
    os << "timings:\n";
    text_lines(os, r.timings, "  ");
  }
  if (r.error) os << "error [" << r.error->code << "]: " << r.error->message << "\n";
  os << "verdict: " << r.verdict << "\n";
  return os.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[k]);
  return os.str();
}

}  // namespace folia::cli
