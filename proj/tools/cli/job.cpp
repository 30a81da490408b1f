#include "cli/job.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "folia/error.hpp"

namespace folia::cli {

namespace {

struct Entry {
  std::string value;  // padded so parser columns match the file
  std::size_t line = 0;
  std::size_t column = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// key = value lines; '#' starts a comment.
std::map<std::string, Entry> read_entries(const std::string& text) {
  std::map<std::string, Entry> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (trim(raw).empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line) + ", column 1: expected 'key = value'", line, 1);
    }
    const std::string key = trim(raw.substr(0, eq));
    if (key.empty()) throw ParseError("line " + std::to_string(line) + ", column 1: missing key", line, 1);
    if (out.count(key)) {
      throw ParseError("line " + std::to_string(line) + ", column 1: duplicate key '" + key + "'", line, 1);
    }
    Entry e;
    e.value = std::string(eq + 1, ' ') + raw.substr(eq + 1);
    e.line = line;
    e.column = eq + 2;
    out[key] = e;
  }
  return out;
}

[[noreturn]] void fail_at(const Entry& e, const std::string& msg) {
  throw ParseError("line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ": " + msg, e.line,
                   e.column);
}

[[noreturn]] void missing(const std::string& what) {
  throw ParseError("line 1, column 1: missing " + what, 1, 1);
}

void reject_unknown(const std::map<std::string, Entry>& entries, std::initializer_list<const char*> known) {
  for (const auto& [key, e] : entries) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail_at(e, "unknown key '" + key + "'");
  }
}

VariableNames parse_vars(const Entry& e) {
  VariableNames vars;
  std::istringstream in(e.value);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (!is_grammar_variable(tok)) fail_at(e, "'" + tok + "' is not a grammar variable");
    vars.push_back(tok);
  }
  if (vars.empty()) fail_at(e, "empty variable list");
  return vars;
}

unsigned parse_weight(const Entry& e) {
  const std::string v = trim(e.value);
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) fail_at(e, "expected a positive integer");
  const unsigned long w = std::stoul(v);
  if (w == 0 || w > 1000) fail_at(e, "weight must be between 1 and 1000");
  return static_cast<unsigned>(w);
}

}  // namespace

bool looks_like_map(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    const auto eq = raw.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(raw.substr(0, eq));
    if (key == "F0" || key == "F1" || key == "F2") return true;
  }
  return false;
}

FoliationFile parse_foliation_text(const std::string& text) {
  const auto entries = read_entries(text);
  reject_unknown(entries, {"A", "B", "C", "omega", "xdot", "ydot", "vars"});
  FoliationFile f;
  if (entries.count("xdot") || entries.count("ydot")) {
    if (!entries.count("xdot") || !entries.count("ydot")) missing("xdot/ydot pair");
    f.kind = FoliationFile::Kind::kAffine;
    f.vars = affine_names();
    const auto& xe = entries.at("xdot");
    const auto& ye = entries.at("ydot");
    f.xdot = parse_polynomial(xe.value, f.vars, xe.line);
    f.ydot = parse_polynomial(ye.value, f.vars, ye.line);
    return f;
  }
  if (entries.count("omega")) {
    f.kind = FoliationFile::Kind::kOmega;
    f.vars = entries.count("vars") ? parse_vars(entries.at("vars")) : projective_names(2);
    const auto& oe = entries.at("omega");
    f.omega = parse_one_form(oe.value, f.vars, oe.line);
    return f;
  }
  if (!entries.count("A") || !entries.count("B")) missing("A and B (or omega, or xdot/ydot)");
  f.kind = FoliationFile::Kind::kThreeLine;
  f.vars = projective_names(2);
  const auto& ae = entries.at("A");
  const auto& be = entries.at("B");
  f.a = parse_polynomial(ae.value, f.vars, ae.line);
  f.b = parse_polynomial(be.value, f.vars, be.line);
  if (entries.count("C")) {
    const auto& ce = entries.at("C");
    f.c = parse_polynomial(ce.value, f.vars, ce.line);
  }
  return f;
}

MapFile parse_map_text(const std::string& text) {
  const auto entries = read_entries(text);
  reject_unknown(entries, {"F0", "F1", "F2", "alpha", "beta", "gamma", "vars"});
  for (const char* k : {"F0", "F1", "F2", "alpha", "beta", "gamma"}) {
    if (!entries.count(k)) missing(std::string("key '") + k + "'");
  }
  MapFile m;
  if (entries.count("vars")) {
    m.vars = parse_vars(entries.at("vars"));
  } else {
    // z0..zk with k the largest index mentioned.
    std::size_t top = 2;
    for (const char* k : {"F0", "F1", "F2"}) {
      const std::string& v = entries.at(k).value;
      for (std::size_t pos = v.find('z'); pos != std::string::npos; pos = v.find('z', pos + 1)) {
        if (pos + 1 < v.size() && std::isdigit(static_cast<unsigned char>(v[pos + 1]))) {
          top = std::max<std::size_t>(top, static_cast<std::size_t>(v[pos + 1] - '0'));
        }
      }
    }
    for (std::size_t j = 0; j <= top; ++j) m.vars.push_back("z" + std::to_string(j));
  }
  const char* names[] = {"F0", "F1", "F2"};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& e = entries.at(names[i]);
    m.components[i] = parse_polynomial(e.value, m.vars, e.line);
  }
  m.weights = {parse_weight(entries.at("alpha")), parse_weight(entries.at("beta")), parse_weight(entries.at("gamma"))};
  return m;
}

ProjectiveFoliation build_foliation(const FoliationFile& file) {
  switch (file.kind) {
    case FoliationFile::Kind::kAffine: return affine_to_projective(file.xdot, file.ydot);
    case FoliationFile::Kind::kOmega: return ProjectiveFoliation(PolyForm::one_form(file.omega));
    case FoliationFile::Kind::kThreeLine: break;
  }
  if (file.c && !(file.a + file.b + *file.c).is_zero()) {
    throw Error(ErrorCode::kDegenerateInput, "A + B + C is not zero");
  }
  return make_three_line(file.a, file.b).foliation();
}

std::optional<ThreeLineFoliation> build_three_line(const FoliationFile& file) {
  if (file.kind == FoliationFile::Kind::kThreeLine) {
    if (file.c && !(file.a + file.b + *file.c).is_zero()) {
      throw Error(ErrorCode::kDegenerateInput, "A + B + C is not zero");
    }
    return make_three_line(file.a, file.b);
  }
  return as_three_line(build_foliation(file));
}

BranchedMap build_map(const MapFile& file, const MapOptions& options) {
  return make_branched_map(file.components[0], file.components[1], file.components[2], file.weights[0],
                           file.weights[1], file.weights[2], options);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code_for(const std::string& verdict, const std::optional<std::string>& error_code) {
  if (verdict == "pass") return 0;
  if (verdict == "fail" || !error_code) return 1;
  if (*error_code == "parse" || *error_code == "usage" || *error_code == "io" ||
      *error_code == error_code_name(ErrorCode::kParse)) {
    return 2;
  }
  for (int k = 0; k <= static_cast<int>(ErrorCode::kInternal); ++k) {
    const auto code = static_cast<ErrorCode>(k);
    if (error_code_name(code) == *error_code) return is_numeric_failure(code) ? 3 : 1;
  }
  return 1;
}

}  // namespace folia::cli
