#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "folia/exterior.hpp"
#include "folia/foliation.hpp"

namespace folia {

// alpha x1 x2 A(x0^alpha, x1^beta, x2^gamma) dx0 + beta x0 x2 B(..) dx1
//   + gamma x0 x1 C(..) dx2
PolyForm local_model_eta(const ThreeLineFoliation& g, unsigned alpha, unsigned beta, unsigned gamma);

struct WeightField {
  std::array<unsigned, 3> raw{};      // (beta gamma, alpha gamma, alpha beta)
  unsigned theta = 1;                 // gcd of raw
  std::array<unsigned, 3> weights{};  // raw / theta
  PolyField s;                        // diagonal field with the normalized weights
};

WeightField weight_field(unsigned alpha, unsigned beta, unsigned gamma);

// Z with d(eta) = i_Z(dx0 ^ dx1 ^ dx2).
PolyField curl_field(const PolyForm& eta);

struct QuasiHomogStructure {
  WeightField weights;
  PolyField s_raw;  // diagonal field with the raw weights
  PolyField z;
  // Eigenvalues for the raw field: L_S eta = m eta, [S, Z] = ell Z.
  long m = 0;
  long ell = 0;
  // Same for the normalized field (raw values divided by theta).
  long m_normalized = 0;
  long ell_normalized = 0;
  mpq_class lambda;             // 1/m
  mpq_class lambda_normalized;  // 1/m_normalized
  bool contraction_identity = false;  // i_S i_Z(vol) = m eta, both fields
};

// Throws kNotEigenform, kNotProportional or kNonzeroLinearPart when the
// corresponding identity fails, kArityMismatch unless eta lives in 3 variables.
QuasiHomogStructure quasi_homog_analyze(const PolyForm& eta, unsigned alpha, unsigned beta, unsigned gamma);

enum class KupkaKind { kKupka, kGkCandidate, kRegular, kSingularNonKupka };

const char* kupka_name(KupkaKind kind);

struct KupkaOptions {
  double zero_tol = 1e-12;  // |omega(p)|, |d omega(p)| relative to coefficient size
  double radius = 1e-2;
  unsigned samples = 200;
  double near_zero = 1e-9;  // shell sample |d omega| relative to the shell maximum
};

struct KupkaResult {
  KupkaKind kind = KupkaKind::kRegular;
  double omega_norm = 0.0;
  double d_omega_norm = 0.0;
  double shell_min_ratio = 0.0;  // only for the probe
};

// Classifies a point of a 1-form in n variables. The probe samples |d omega|
// on a quasi-random sphere around the point; a near-zero sample raises
// kProbeInconclusive.
KupkaResult kupka_check(const PolyForm& omega, const std::vector<std::complex<double>>& point,
                        const KupkaOptions& options = {});

struct RamifiedPullback {
  MultiPoly factor;  // monomial
  PolyForm reduced;
};

// Pulls back lambda1 u (1 + R(u,v)) dv - lambda2 v du under (u, v) = (x^alpha, y^beta)
// and strips the monomial factor.
RamifiedPullback ramified_pullback_2d(const GaussianRational& lambda1, const GaussianRational& lambda2, unsigned alpha,
                                      unsigned beta, const MultiPoly& r);

}  // namespace folia
