#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "folia/foliation.hpp"

namespace folia {

using Complex = std::complex<double>;
using PointP2 = std::array<Complex, 3>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

enum class SingularityKind { kHyperbolic, kNonhyperbolic, kDegenerate };

const char* kind_name(SingularityKind kind);  // "nondegenerate-hyperbolic", ...

// How camacho_sad_index treats a pole of order > 1.
enum class PolePolicy { kCompute, kReject };

struct SingularOptions {
  double tol = 1e-9;            // projective deduplication, point-on-line checks
  double root_tol = 1e-10;      // root-finder residual bound
  double det_cutoff = 1e-10;    // |det DX| relative to ||DX||^2
  double equal_eigen_cutoff = 1e-12;  // |discriminant| relative to ||DX||^2
  double hyperbolic_cutoff = 1e-9;    // |Im lambda| relative to |lambda|
  std::uint64_t seed = 0;
  unsigned max_shears = 8;
  std::size_t line_cap = 64;
  PolePolicy poles = PolePolicy::kCompute;
};

struct SingularityRecord {
  PointP2 point{};        // max-modulus coordinate equal to 1
  std::size_t chart = 0;  // index of that coordinate
  Matrix2 jacobian{};     // DX in the chart, symbolic
  Matrix2 jacobian_fd{};  // finite-difference oracle
  double jacobian_agreement = 0.0;  // max |J - J_fd| / max(1, max |J|)
  std::array<Complex, 2> eigenvalues{};
  std::optional<std::array<Complex, 2>> char_numbers;  // (e2/e1, e1/e2)
  SingularityKind kind = SingularityKind::kDegenerate;
  double residual = 0.0;  // max |A_j(point)|
};

// Dual vector field of F in the affine chart z_chart = 1, as polynomials in
// the remaining two coordinates in increasing index order. For
// omega = C_u du + C_v dv the field is (-C_v, C_u).
std::pair<MultiPoly, MultiPoly> chart_field(const ProjectiveFoliation& f, std::size_t chart);

// Normalizes so that the max-modulus coordinate is 1; returns its index.
std::size_t normalize_point(PointP2& p);

// Singular points of a foliation on P^2, each classified. Sorted by rounded
// coordinates. Throws kNonIsolatedSingularity when a chart has a curve of
// zeros and kMultipleRootSuspected when eliminations keep producing clustered
// roots (typically a degenerate singular point).
std::vector<SingularityRecord> all_singularities_P2(const ProjectiveFoliation& f, const SingularOptions& options = {});

// Linearization in the best chart. Throws kNotSingular when the point fails
// the residual bound. A degenerate point is returned with kind kDegenerate and
// no characteristic numbers.
SingularityRecord classify_singularity(const ProjectiveFoliation& f, const PointP2& point,
                                       const SingularOptions& options = {});

struct SeparatrixIndex {
  Line line;
  PointP2 point{};
  Complex index;
  unsigned pole_order = 1;
  // Transverse over tangent eigenvalue, when the point is nondegenerate.
  std::optional<Complex> eigen_ratio;
};

// Residue of a(0,v)/b(0,v) at the point, in a chart where the line is u = 0
// and the field reads (u*a, b).
SeparatrixIndex camacho_sad_index(const ProjectiveFoliation& f, const Line& line, const PointP2& point,
                                  const SingularOptions& options = {});

// Indices at every singular point of an invariant line.
std::vector<SeparatrixIndex> camacho_sad_line_indices(const ProjectiveFoliation& f, const Line& line,
                                                      const SingularOptions& options = {});
Complex camacho_sad_line_sum(const ProjectiveFoliation& f, const Line& line, const SingularOptions& options = {});

struct InvariantLine {
  std::array<Complex, 3> coefficients{};  // max-modulus coefficient equal to 1
  std::optional<Line> exact;              // set when certified symbolically
};

struct LineExclusion {
  std::vector<SingularityRecord> singularities;
  std::size_t candidates = 0;
  std::vector<InvariantLine> invariant_lines;
};

// Tests every line through two singular points, and every line along an
// eigendirection, for invariance. Throws kDegenerateSingularity if a singular
// point is degenerate and kCapExceeded for a dicritical point or too many lines.
LineExclusion invariant_line_exclusion(const ProjectiveFoliation& f, const SingularOptions& options = {});

}  // namespace folia
