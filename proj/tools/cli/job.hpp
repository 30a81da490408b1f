#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "folia/foliation.hpp"
#include "folia/parse.hpp"
#include "folia/pullback.hpp"

namespace folia::cli {

inline constexpr std::array<const char*, 8> kCommands = {"check",         "degree", "pullback", "singularities",
                                                         "indices",       "exclude-lines", "local", "bezout"};

struct JobSpec {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  unsigned trials = 3;
  std::string format = "text";
  std::string out;  // empty: standard output
  unsigned ramify = 1;
  std::optional<std::string> line;  // linear form in X, Y, Z
  std::optional<std::array<unsigned, 3>> weights;
  bool regime = false;
  bool timings = false;
};

// A foliation file holds either `A = ..`, `B = ..` (optionally `C = ..`),
// `omega = .. dX + ..`, or an affine field `xdot = ..`, `ydot = ..`.
struct FoliationFile {
  enum class Kind { kThreeLine, kOmega, kAffine } kind = Kind::kThreeLine;
  VariableNames vars;
  MultiPoly a, b;
  std::optional<MultiPoly> c;  // as written, when present
  std::vector<MultiPoly> omega;
  MultiPoly xdot, ydot;
};

struct MapFile {
  VariableNames vars;
  std::array<MultiPoly, 3> components;
  std::array<unsigned, 3> weights{};
};

// Throw ParseError with file line and column on grammar violations.
FoliationFile parse_foliation_text(const std::string& text);
MapFile parse_map_text(const std::string& text);

// True when the text declares map keys (F0, F1, F2).
bool looks_like_map(const std::string& text);

// Runs the validating constructors; throws folia::Error on violations.
ProjectiveFoliation build_foliation(const FoliationFile& file);
std::optional<ThreeLineFoliation> build_three_line(const FoliationFile& file);
BranchedMap build_map(const MapFile& file, const MapOptions& options);

std::string read_file(const std::string& path);

// 0 pass, 1 fail or invariant violation, 2 parse/usage, 3 numeric failure.
int exit_code_for(const std::string& verdict, const std::optional<std::string>& error_code);

}  // namespace folia::cli
