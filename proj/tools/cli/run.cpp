#include "cli/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include "folia/error.hpp"
#include "folia/local_structure.hpp"
#include "folia/singular.hpp"

namespace folia::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Loaded {
  std::string path;
  std::string text;
  bool is_map = false;
};

struct Outcome {
  json result = json::object();
  json residuals = json::object();
  bool pass = false;
};

std::string form_to_string(const PolyForm& form, const VariableNames& vars) {
  if (form.is_zero()) return "0";
  std::string out;
  for (const auto& [mask, coeff] : form.components()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(coeff, vars) + ")";
    std::string basis;
    for (std::size_t j : indices_of(mask)) basis += (basis.empty() ? "d" : "^d") + vars[j];
    if (!basis.empty()) out += " " + basis;
  }
  return out;
}

json point_json(const PointP2& p) {
  json a = json::array();
  for (const auto& z : p) a.push_back(complex_json(z));
  return a;
}

json matrix_json(const Matrix2& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(json::array({complex_json(row[0]), complex_json(row[1])}));
  return a;
}

SingularOptions singular_options(const JobSpec& job) {
  SingularOptions o;
  if (job.tol) o.tol = *job.tol;
  o.seed = job.seed;
  return o;
}

const Loaded& expect_one(const std::vector<Loaded>& in, bool want_map) {
  if (in.size() != 1) throw UsageError("expected exactly one input file");
  if (in[0].is_map != want_map) throw UsageError(want_map ? "expected a map file" : "expected a foliation file");
  return in[0];
}

// (map, foliation) in either order.
std::pair<const Loaded*, const Loaded*> expect_pair(const std::vector<Loaded>& in) {
  if (in.size() != 2 || in[0].is_map == in[1].is_map) throw UsageError("expected one map file and one foliation file");
  return in[0].is_map ? std::make_pair(&in[0], &in[1]) : std::make_pair(&in[1], &in[0]);
}

ThreeLineFoliation three_line_from(const Loaded& file) {
  auto g = build_three_line(parse_foliation_text(file.text));
  if (!g) throw Error(ErrorCode::kDegenerateInput, "foliation is not of three-line form");
  return *g;
}

ProjectiveFoliation maybe_ramify(ProjectiveFoliation f, const JobSpec& job) {
  if (job.ramify > 1) return ramified_cover_pullback(f, job.ramify);
  return f;
}

Outcome cmd_check(const JobSpec& job, const std::vector<Loaded>& in) {
  if (in.size() != 1) throw UsageError("expected exactly one input file");
  Outcome o;
  if (in[0].is_map) {
    MapOptions mo{job.regime, job.seed};
    const BranchedMap f = build_map(parse_map_text(in[0].text), mo);
    o.result["kind"] = "map";
    o.result["nu"] = f.nu;
    o.result["weights"] = f.weights;
    o.result["regime"] = f.regime;
    o.pass = true;
    return o;
  }
  const FoliationFile file = parse_foliation_text(in[0].text);
  PolyForm omega;
  bool ok = true;
  switch (file.kind) {
    case FoliationFile::Kind::kThreeLine: {
      o.result["kind"] = "three-line";
      const MultiPoly c = file.c ? *file.c : -(file.a + file.b);
      const MultiPoly sum = file.a + file.b + c;
      o.residuals["A+B+C"] = to_string(sum, file.vars);
      ok = sum.is_zero();
      omega = three_line_form(file.a, file.b, c);
      break;
    }
    case FoliationFile::Kind::kOmega:
      o.result["kind"] = "omega";
      omega = PolyForm::one_form(file.omega);
      break;
    case FoliationFile::Kind::kAffine:
      o.result["kind"] = "affine";
      omega = build_foliation(file).omega();
      break;
  }
  const VariableNames vars = file.kind == FoliationFile::Kind::kAffine ? projective_names(2) : file.vars;
  const CheckResult euler = check_euler(omega);
  const CheckResult integrable = check_integrability(omega);
  o.residuals["euler"] = form_to_string(euler.residual, vars);
  o.residuals["integrability"] = form_to_string(integrable.residual, vars);
  o.result["euler"] = euler.ok;
  o.result["integrable"] = integrable.ok;
  ok = ok && euler.ok && integrable.ok;
  if (ok) {
    const ProjectiveFoliation f = build_foliation(file);
    if (file.kind == FoliationFile::Kind::kThreeLine) make_three_line(file.a, file.b);
    o.result["dimension"] = f.dimension();
    o.result["coefficient_degree"] = f.coefficient_degree();
    o.result["degree"] = f.degree();
    json coeffs = json::array();
    for (const auto& c : f.coefficients()) coeffs.push_back(to_string(c, vars));
    o.result["coefficients"] = coeffs;
  }
  o.pass = ok;
  return o;
}

Outcome cmd_degree(const JobSpec& job, const std::vector<Loaded>& in) {
  Outcome o;
  if (in.size() == 1) {
    const ProjectiveFoliation f = build_foliation(parse_foliation_text(expect_one(in, false).text));
    const TangencyDegree t = foliation_degree_by_tangency(f, job.trials, job.seed);
    o.result["coefficient_degree"] = f.coefficient_degree();
    o.result["degree"] = f.degree();
    o.result["tangency_degree"] = t.degree;
    o.result["per_trial"] = t.per_trial;
    o.pass = t.degree == f.degree();
    return o;
  }
  auto [map_file, fol_file] = expect_pair(in);
  const BranchedMap f = build_map(parse_map_text(map_file->text), MapOptions{job.regime, job.seed});
  const ThreeLineFoliation g = three_line_from(*fol_file);
  const ProjectiveFoliation eta = build_eta(f, g);
  const TangencyDegree t = foliation_degree_by_tangency(eta, job.trials, job.seed);
  // nu * ((d-1) + 1/alpha + 1/beta + 1/gamma) - 2, kept exact.
  mpq_class predicted = mpq_class(f.nu) * (mpq_class(g.d() - 1) + mpq_class(1, f.weights[0]) +
                                           mpq_class(1, f.weights[1]) + mpq_class(1, f.weights[2])) -
                        2;
  predicted.canonicalize();
  o.result["nu"] = f.nu;
  o.result["weights"] = f.weights;
  o.result["d"] = g.d();
  o.result["coefficient_degree"] = eta.coefficient_degree();
  o.result["predicted_degree"] = predicted.get_str();
  o.result["measured_degree"] = t.degree;
  o.result["per_trial"] = t.per_trial;
  o.pass = predicted == mpq_class(t.degree) && eta.coefficient_degree() == expected_eta_degree(f, g.d());
  return o;
}

Outcome cmd_pullback(const JobSpec& job, const std::vector<Loaded>& in) {
  Outcome o;
  auto [map_file, fol_file] = expect_pair(in);
  const MapFile mf = parse_map_text(map_file->text);
  const BranchedMap f = build_map(mf, MapOptions{job.regime, job.seed});
  const ThreeLineFoliation g = three_line_from(*fol_file);
  const ProjectiveFoliation eta = build_eta(f, g);  // validates Euler and integrability
  std::vector<MultiPoly> map;
  for (std::size_t i = 0; i < 3; ++i) map.push_back(pow(f.components[i], f.weights[i]));
  const PolyForm pulled = pullback_form(map, g.foliation().omega());
  const bool functorial = pulled == eta_pullback_factor(f) * eta.omega();
  o.result["nu"] = f.nu;
  o.result["weights"] = f.weights;
  o.result["regime"] = f.regime;
  o.result["d"] = g.d();
  o.result["coefficient_degree"] = eta.coefficient_degree();
  o.result["expected_coefficient_degree"] = expected_eta_degree(f, g.d());
  o.result["foliation_degree"] = eta.degree();
  o.result["euler"] = true;
  o.result["integrable"] = true;
  o.result["functorial"] = functorial;
  json terms = json::array();
  for (const auto& c : eta.coefficients()) terms.push_back(c.term_count());
  o.result["term_counts"] = terms;
  o.pass = functorial && eta.coefficient_degree() == expected_eta_degree(f, g.d());
  return o;
}

Outcome cmd_singularities(const JobSpec& job, const std::vector<Loaded>& in) {
  Outcome o;
  const ProjectiveFoliation f =
      maybe_ramify(build_foliation(parse_foliation_text(expect_one(in, false).text)), job);
  const SingularOptions opts = singular_options(job);
  const auto recs = all_singularities_P2(f, opts);
  json points = json::array();
  json flags = json::array();
  bool all_nondegenerate = true;
  double worst_residual = 0.0, worst_agreement = 0.0;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    const auto& r = recs[k];
    json p;
    p["point"] = point_json(r.point);
    p["chart"] = r.chart;
    p["classification"] = kind_name(r.kind);
    p["jacobian"] = matrix_json(r.jacobian);
    p["jacobian_agreement"] = r.jacobian_agreement;
    p["eigenvalues"] = json::array({complex_json(r.eigenvalues[0]), complex_json(r.eigenvalues[1])});
    if (r.char_numbers) {
      p["char_numbers"] = json::array({complex_json((*r.char_numbers)[0]), complex_json((*r.char_numbers)[1])});
    }
    p["residual"] = r.residual;
    if (r.kind == SingularityKind::kNonhyperbolic) flags.push_back(k);
    all_nondegenerate = all_nondegenerate && r.kind != SingularityKind::kDegenerate;
    worst_residual = std::max(worst_residual, r.residual);
    worst_agreement = std::max(worst_agreement, r.jacobian_agreement);
    points.push_back(p);
  }
  const unsigned d = f.degree();
  o.result["degree"] = d;
  o.result["count"] = recs.size();
  o.result["expected_count"] = d * d + d + 1;
  o.result["all_nondegenerate"] = all_nondegenerate;
  o.result["nonhyperbolic_points"] = flags;
  o.result["points"] = points;
  o.residuals["max_point_residual"] = worst_residual;
  o.residuals["max_jacobian_disagreement"] = worst_agreement;
  const bool count_ok = !all_nondegenerate || recs.size() == d * d + d + 1;
  o.pass = count_ok && worst_residual <= opts.root_tol * 100 && worst_agreement < 1e-8;
  return o;
}

Line parse_line(const std::string& text) {
  const MultiPoly l = parse_polynomial(text, projective_names(2));
  if (l.total_degree() != 1 || !l.is_homogeneous()) {
    throw ParseError("line 1, column 1: --line must be a nonzero linear form in X, Y, Z", 1, 1);
  }
  Line line;
  for (std::size_t j = 0; j < 3; ++j) {
    Exponents e(3, 0);
    e[j] = 1;
    line.coefficients[j] = l.coefficient(e);
  }
  return line;
}

std::string line_string(const Line& line) {
  MultiPoly l(3);
  for (std::size_t j = 0; j < 3; ++j) l += MultiPoly::variable(3, j) * line.coefficients[j];
  return to_string(l, projective_names(2));
}

Outcome cmd_indices(const JobSpec& job, const std::vector<Loaded>& in) {
  Outcome o;
  const ProjectiveFoliation f =
      maybe_ramify(build_foliation(parse_foliation_text(expect_one(in, false).text)), job);
  std::vector<Line> lines;
  if (job.line) {
    lines.push_back(parse_line(*job.line));
  } else {
    for (std::size_t k = 0; k < 3; ++k) {
      if (is_line_invariant(f.omega(), Line::coordinate(k))) lines.push_back(Line::coordinate(k));
    }
  }
  const SingularOptions opts = singular_options(job);
  json out = json::array();
  bool ok = true;
  double worst = 0.0;
  for (const auto& line : lines) {
    json entry;
    entry["line"] = line_string(line);
    json idx = json::array();
    Complex sum = 0.0;
    for (const auto& s : camacho_sad_line_indices(f, line, opts)) {
      json e;
      e["point"] = point_json(s.point);
      e["index"] = complex_json(s.index);
      e["pole_order"] = s.pole_order;
      if (s.eigen_ratio) e["eigen_ratio"] = complex_json(*s.eigen_ratio);
      idx.push_back(e);
      sum += s.index;
    }
    entry["indices"] = idx;
    entry["sum"] = complex_json(sum);
    worst = std::max(worst, std::abs(sum - 1.0));
    ok = ok && std::abs(sum - 1.0) <= 1e-8;
    out.push_back(entry);
  }
  o.result["lines"] = out;
  o.residuals["max_sum_deviation"] = worst;
  o.pass = ok && !lines.empty();
  return o;
}

Outcome cmd_exclude_lines(const JobSpec& job, const std::vector<Loaded>& in) {
  Outcome o;
  const ProjectiveFoliation f =
      maybe_ramify(build_foliation(parse_foliation_text(expect_one(in, false).text)), job);
  const LineExclusion ex = invariant_line_exclusion(f, singular_options(job));
  json lines = json::array();
  bool certified = true;
  for (const auto& l : ex.invariant_lines) {
    json e;
    e["coefficients"] = json::array(
        {complex_json(l.coefficients[0]), complex_json(l.coefficients[1]), complex_json(l.coefficients[2])});
    if (l.exact) e["exact"] = line_string(*l.exact);
    certified = certified && l.exact.has_value();
    lines.push_back(e);
  }
  o.result["singularities"] = ex.singularities.size();
  o.result["candidates"] = ex.candidates;
  o.result["invariant_lines"] = lines;
  o.result["all_certified"] = certified;
  o.pass = true;
  return o;
}

Outcome cmd_local(const JobSpec& job, const std::vector<Loaded>& in) {
  Outcome o;
  std::array<unsigned, 3> w{};
  const Loaded* fol = nullptr;
  if (in.size() == 2) {
    auto [map_file, fol_file] = expect_pair(in);
    w = parse_map_text(map_file->text).weights;
    fol = fol_file;
  } else {
    fol = &expect_one(in, false);
    if (!job.weights) throw UsageError("local needs --weights a,b,c or a map file");
    w = *job.weights;
  }
  if (job.weights) w = *job.weights;
  const ThreeLineFoliation g = three_line_from(*fol);
  const PolyForm eta = local_model_eta(g, w[0], w[1], w[2]);
  const QuasiHomogStructure q = quasi_homog_analyze(eta, w[0], w[1], w[2]);
  const long predicted = static_cast<long>(q.weights.raw[0] + q.weights.raw[1] + q.weights.raw[2]) +
                         static_cast<long>(w[0] * w[1] * w[2]) * static_cast<long>(g.d() - 1);
  const KupkaResult k = kupka_check(eta, {0.0, 0.0, 0.0});
  o.result["weights"] = w;
  o.result["raw_weights"] = q.weights.raw;
  o.result["theta"] = q.weights.theta;
  o.result["normalized_weights"] = q.weights.weights;
  o.result["m"] = q.m;
  o.result["m_predicted"] = predicted;
  o.result["ell"] = q.ell;
  o.result["m_normalized"] = q.m_normalized;
  o.result["ell_normalized"] = q.ell_normalized;
  o.result["lambda"] = q.lambda.get_str();
  o.result["lambda_normalized"] = q.lambda_normalized.get_str();
  o.result["contraction_identity"] = q.contraction_identity;
  o.result["origin"] = kupka_name(k.kind);
  o.residuals["shell_min_ratio"] = k.shell_min_ratio;
  o.pass = q.m == predicted && q.contraction_identity && k.kind == KupkaKind::kGkCandidate;
  return o;
}

Outcome cmd_bezout(const JobSpec& job, const std::vector<Loaded>& in) {
  Outcome o;
  const BranchedMap f = build_map(parse_map_text(expect_one(in, true).text), MapOptions{job.regime, job.seed});
  const BezoutCount count = bezout_count(f.nu, f.weights[0], f.weights[1], f.weights[2]);
  o.result["nu"] = f.nu;
  o.result["weights"] = f.weights;
  o.result["points"] = count.points;
  o.result["multiplicity"] = count.multiplicity;
  o.pass = true;
  try {
    const auto pts = indeterminacy_fermat(f);
    const auto gen = check_generic_at_points(f, pts, job.tol.value_or(1e-9));
    std::size_t generic = 0;
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& g : gen) {
      generic += g.generic;
      smallest = std::min(smallest, g.max_minor);
    }
    o.result["enumerated"] = pts.size();
    o.result["generic"] = generic;
    o.residuals["min_wedge"] = pts.empty() ? 0.0 : smallest;
    o.pass = pts.size() == count.points && generic == pts.size();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotFermatForm) throw;
    o.result["enumerated"] = nullptr;
  }
  return o;
}

Outcome dispatch(const JobSpec& job, const std::vector<Loaded>& in) {
  const std::string& c = job.command;
  if (c == "check") return cmd_check(job, in);
  if (c == "degree") return cmd_degree(job, in);
  if (c == "pullback") return cmd_pullback(job, in);
  if (c == "singularities") return cmd_singularities(job, in);
  if (c == "indices") return cmd_indices(job, in);
  if (c == "exclude-lines") return cmd_exclude_lines(job, in);
  if (c == "local") return cmd_local(job, in);
  if (c == "bezout") return cmd_bezout(job, in);
  throw UsageError("unknown command '" + c + "'");
}

}  // namespace

Report run(const JobSpec& job) {
  Report report;
  report.command = job.command;
  report.seed = job.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<Loaded> inputs;
    for (const auto& path : job.inputs) {
      Loaded l;
      l.path = path;
      try {
        l.text = read_file(path);
      } catch (const std::runtime_error& e) {
        report.error = ErrorInfo{"io", e.what(), std::nullopt, std::nullopt};
        return report;
      }
      l.is_map = looks_like_map(l.text);
      report.inputs.push_back({path, sha256_hex(l.text)});
      inputs.push_back(std::move(l));
    }
    Outcome o = dispatch(job, inputs);
    report.result = std::move(o.result);
    report.residuals = std::move(o.residuals);
    report.verdict = o.pass ? "pass" : "fail";
  } catch (const ParseError& e) {
    report.error = ErrorInfo{"parse", e.what(), e.line(), e.column()};
  } catch (const Error& e) {
    report.error = ErrorInfo{std::string(error_code_name(e.code())), e.what(), std::nullopt, std::nullopt};
  } catch (const UsageError& e) {
    report.error = ErrorInfo{"usage", e.what(), std::nullopt, std::nullopt};
  } catch (const std::exception& e) {
    report.error = ErrorInfo{"internal", e.what(), std::nullopt, std::nullopt};
  }
  if (job.timings) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report.timings["total_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  }
  return report;
}

void emit(const JobSpec& job, const Report& report) {
  const std::string text = job.format == "json" ? render_json(report) : render_text(report);
  if (job.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(job.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + job.out + "'");
  out << text;
}

}  // namespace folia::cli
