// Copyright 2026 The ChoiPoly Authors.
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

// Command line front end.  One subcommand per process; exit code 0 means
// success or a verified certificate, 1 an input or usage error, 2 a negative
// mathematical verdict the caller asked to be enforced.  All numeric output
// uses shortest round-trip decimals, so identical command lines produce
// byte-identical reports and certificates.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "choipoly/choipoly.hpp"

namespace {

using namespace choipoly;

constexpr const char* kVersion = "0.1.0";
constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNegativeVerdict = 2;

std::string num(double x) { return Json(x).dump(); }

std::string yesno(bool b) { return b ? "yes" : "no"; }

struct CommonOpts {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int restarts = 100;
  int max_iters = 500;
  std::string json_out = ".";
  CLI::Option* json_out_opt = nullptr;

  bool emit_requested() const { return json_out_opt != nullptr && json_out_opt->count() > 0; }

  SeesawConfig seesaw() const {
    SeesawConfig c;
    c.restarts = restarts;
    c.max_iters = max_iters;
    c.seed = seed;
    return c;
  }

  Json provenance() const {
    Json p;
    p["tool"] = "choipoly";
    p["version"] = kVersion;
    p["seed"] = seed;
    p["restarts"] = restarts;
    p["tol"] = tol;
    return p;
  }
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--tol", o.tol, "verification tolerance")->capture_default_str();
  sub->add_option("--seed", o.seed, "base RNG seed for see-saw restarts")->capture_default_str();
  sub->add_option("--restarts", o.restarts, "see-saw restarts")->capture_default_str();
  sub->add_option("--max-iters", o.max_iters, "see-saw iterations per restart")
      ->capture_default_str();
  o.json_out_opt =
      sub->add_option("--json-out", o.json_out, "directory for JSON reports and certificates");
}

double parse_scalar(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument(std::string(what) + ": expected a finite number, got \"" + s +
                                "\"");
  }
}

BipartiteDims parse_dims(const std::string& s) {
  const auto comma = s.find(',');
  unsigned long m = 0, n = 0;
  try {
    if (comma == std::string::npos) throw std::invalid_argument("");
    std::size_t used = 0;
    m = std::stoul(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("");
    const std::string rest = s.substr(comma + 1);
    n = std::stoul(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("");
  } catch (...) {
    throw std::invalid_argument("--dims expects two positive integers as m,n");
  }
  if (m == 0 || n == 0) throw std::invalid_argument("--dims expects positive integers");
  return BipartiteDims{static_cast<std::size_t>(m), static_cast<std::size_t>(n)};
}

std::vector<double> parse_weights(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const std::string tok =
        comma == std::string::npos ? s.substr(start) : s.substr(start, comma - start);
    out.push_back(parse_scalar(tok, "--eps"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string out_path(const CommonOpts& o, const std::string& name) {
  std::filesystem::create_directories(o.json_out);
  return (std::filesystem::path(o.json_out) / name).string();
}

Json vec_json(const CVec& v) {
  Json a = Json::array();
  for (const cplx& c : v) a.push_back(Json::array({c.real(), c.imag()}));
  return a;
}

Json pair_json(const ProductPair& p) {
  Json j;
  j["x"] = vec_json(p.x);
  j["y"] = vec_json(p.y);
  return j;
}

Json files_json(const std::vector<std::string>& files) {
  Json a = Json::array();
  for (const std::string& f : files) a.push_back(f);
  return a;
}

std::string joined(const std::vector<std::string>& files) {
  std::string s;
  for (const std::string& f : files) {
    if (!s.empty()) s += ' ';
    s += f;
  }
  return s;
}

// ---------------------------------------------------------------------------
// analyze-map
// ---------------------------------------------------------------------------

struct AnalyzeMapArgs {
  std::string input;
  bool require_positive = false;
  bool search_witness = false;
  int witness_iters = 1200;
};

int run_analyze_map(const CommonOpts& o, const AnalyzeMapArgs& a) {
  LinearMapRep rep;
  if (a.input == "tau41")
    rep = tau41();
  else
    rep = map_from_json(load_json_file(a.input));

  ClassifyOptions copts;
  copts.seesaw = o.seesaw();
  copts.tol = o.tol;
  copts.search_witness = a.search_witness;
  copts.witness_cfg.iters = a.witness_iters;
  copts.witness_cfg.dykstra_iters = 16;
  copts.witness_cfg.polish_iters = 40;
  copts.witness_cfg.tol = o.tol;
  const MapClassification c = classify(rep, copts);

  std::ostringstream text;
  text << "command: analyze-map\n";
  text << "input: " << a.input << "\n";
  text << "dims: m=" << rep.dims.m << " n=" << rep.dims.n << "\n";
  text << "self-adjoint: " << yesno(c.self_adjoint) << "\n";
  text << "hermitian defect: " << num(c.hermitian_defect) << "\n";
  text << "real-preserving: " << yesno(c.real_preserving) << "\n";
  if (c.self_adjoint) {
    text << "completely positive: " << yesno(c.completely_positive) << "\n";
    text << "choi min eigenvalue: " << num(c.choi_min_eig) << "\n";
    text << "completely copositive: " << yesno(c.completely_copositive) << "\n";
    text << "choi partial transpose min eigenvalue: " << num(c.choi_pt_min_eig) << "\n";
  }
  text << "positive: " << to_string(c.positive);
  if (c.positive == TriState::yes && !c.completely_positive && !c.completely_copositive &&
      c.choi_in_D != TriState::yes)
    text << " (heuristic)";
  text << "\n";
  if (c.min_report) text << "see-saw product minimum: " << num(c.min_report->value) << "\n";
  if (c.negativity_witness) {
    const cplx v = eval_form(choi_to_gram(rep), c.negativity_witness->x, c.negativity_witness->y);
    text << "negativity witness value: " << num(v.real()) << "\n";
  }
  text << "decomposable: " << to_string(c.choi_in_D) << "\n";
  if (c.indecomposability)
    text << "witness pairing value: " << num(c.indecomposability->trace_value) << "\n";

  Json report;
  report["command"] = "analyze-map";
  report["input"] = a.input;
  report["m"] = rep.dims.m;
  report["n"] = rep.dims.n;
  report["self_adjoint"] = c.self_adjoint;
  report["hermitian_defect"] = c.hermitian_defect;
  report["real_preserving"] = c.real_preserving;
  report["completely_positive"] = c.completely_positive;
  report["choi_min_eig"] = c.choi_min_eig;
  report["completely_copositive"] = c.completely_copositive;
  report["choi_pt_min_eig"] = c.choi_pt_min_eig;
  report["positive"] = to_string(c.positive);
  report["see_saw_min"] = c.min_report ? Json(c.min_report->value) : Json(nullptr);
  report["negativity_witness"] =
      c.negativity_witness ? pair_json(*c.negativity_witness) : Json(nullptr);
  report["decomposable"] = to_string(c.choi_in_D);
  if (c.decomposability)
    report["certificate"] = cert_to_json(*c.decomposability);
  else if (c.indecomposability)
    report["certificate"] = witness_to_json(*c.indecomposability);
  else
    report["certificate"] = nullptr;

  std::vector<std::string> files;
  if (o.emit_requested()) {
    if (c.decomposability || c.indecomposability) {
      write_json_file(out_path(o, "map_form.json"), form_to_json(choi_to_gram(rep)));
      Json cert = c.decomposability ? cert_to_json(*c.decomposability)
                                    : witness_to_json(*c.indecomposability);
      write_json_file(out_path(o, "map_cert.json"), cert);
      files.push_back("map_form.json");
      files.push_back("map_cert.json");
    }
    files.push_back("map_report.json");
    report["files"] = files_json(files);
    report["provenance"] = o.provenance();
    write_json_file(out_path(o, "map_report.json"), report);
    text << "wrote: " << joined(files) << "\n";
  }

  std::cout << text.str();
  if (a.require_positive && c.positive == TriState::no) return kNegativeVerdict;
  return kOk;
}

// ---------------------------------------------------------------------------
// analyze-state
// ---------------------------------------------------------------------------

struct AnalyzeStateArgs {
  std::string input;
  std::string dims_str;
  bool edge = false;
  double eps = 0.0;
  CLI::Option* dims_opt = nullptr;
  CLI::Option* eps_opt = nullptr;
};

int run_analyze_state(const CommonOpts& o, const AnalyzeStateArgs& a) {
  ComplexMatrix rho;
  BipartiteDims dims{0, 0};
  const bool builtin = a.input == "horodecki";
  if (builtin) {
    rho = horodecki_state();
    dims = BipartiteDims{2, 4};
    if (a.dims_opt->count() > 0 && !(parse_dims(a.dims_str) == dims))
      throw std::invalid_argument("the builtin horodecki state has dims 2,4");
  } else {
    rho = matrix_from_json(load_json_file(a.input), "state");
    if (a.dims_opt->count() == 0)
      throw std::invalid_argument("analyze-state requires --dims m,n for file input");
    dims = parse_dims(a.dims_str);
    require_bipartite_order(rho, dims, "state");
  }

  if (!is_hermitian(rho, o.tol)) throw std::invalid_argument("state is not Hermitian");
  const ComplexMatrix h = hermitize(rho);
  const double tr = trace(h).real();
  const double min_eig = min_eigenvalue(h);
  if (min_eig < -o.tol) throw std::invalid_argument("state is not positive semidefinite");
  const double pt_min = min_eigenvalue(hermitize(partial_transpose_second(h, dims)));
  const bool ppt = pt_min >= -o.tol;
  const bool want_edge = a.edge || a.eps_opt->count() > 0;

  std::ostringstream text;
  text << "command: analyze-state\n";
  text << "input: " << a.input << "\n";
  text << "dims: m=" << dims.m << " n=" << dims.n << "\n";
  text << "trace: " << num(tr) << "\n";
  text << "min eigenvalue: " << num(min_eig) << "\n";
  text << "partial transpose min eigenvalue: " << num(pt_min) << "\n";
  text << "ppt: " << yesno(ppt) << "\n";

  Json report;
  report["command"] = "analyze-state";
  report["input"] = a.input;
  report["m"] = dims.m;
  report["n"] = dims.n;
  report["trace"] = tr;
  report["min_eig"] = min_eig;
  report["pt_min_eig"] = pt_min;
  report["ppt"] = ppt;
  report["edge"] = nullptr;
  report["delta"] = nullptr;
  report["certificate"] = nullptr;

  auto finish = [&](int code) {
    std::vector<std::string> files;
    if (o.emit_requested()) {
      files.push_back("state_report.json");
      report["files"] = files_json(files);
      report["provenance"] = o.provenance();
      write_json_file(out_path(o, "state_report.json"), report);
      text << "wrote: " << joined(files) << "\n";
    }
    std::cout << text.str();
    return code;
  };

  if (!ppt) {
    text << "entangled: yes (negative partial transpose)\n";
    report["entangled"] = "yes";
    if (want_edge) {
      text << "edge: not applicable (state is not PPT)\n";
      report["edge"] = "not applicable";
      return finish(kNegativeVerdict);
    }
    return finish(kOk);
  }

  if (!want_edge) return finish(kOk);

  const double requested = a.eps_opt->count() > 0 ? a.eps : 0.0;
  const EdgeReport er = edge_check(h, dims, o.seesaw(), requested, o.tol);
  text << "edge: " << to_string(er.is_edge) << "\n";
  text << "product gap delta: " << num(er.delta) << "\n";
  report["edge"] = to_string(er.is_edge);
  report["delta"] = er.delta;
  if (er.zero_pair) {
    const double v = eval_form(er.gram, er.zero_pair->x, er.zero_pair->y).real();
    text << "range product pair found, form value: " << num(v) << "\n";
    report["range_product_pair"] = pair_json(*er.zero_pair);
  }

  std::vector<std::string> files;
  if (er.witness) {
    if (!verify_indecomposability(*er.shifted_form, *er.witness, o.tol))
      throw std::runtime_error("internal error: edge witness failed verification");
    text << "eps: " << num(er.requested_eps) << "\n";
    text << "witness trace: " << num(er.witness->trace_value) << "\n";
    text << "witness verified: yes\n";
    report["eps"] = er.requested_eps;
    report["witness_trace"] = er.witness->trace_value;
    report["certificate"] = witness_to_json(*er.witness);
    write_json_file(out_path(o, "state_form.json"), form_to_json(*er.shifted_form));
    write_json_file(out_path(o, "state_cert.json"), witness_to_json(*er.witness));
    files.push_back("state_form.json");
    files.push_back("state_cert.json");
  }
  if (o.emit_requested() || !files.empty()) {
    files.push_back("state_report.json");
    report["files"] = files_json(files);
    report["provenance"] = o.provenance();
    write_json_file(out_path(o, "state_report.json"), report);
    text << "wrote: " << joined(files) << "\n";
  }
  std::cout << text.str();
  return kOk;
}

// ---------------------------------------------------------------------------
// analyze-form
// ---------------------------------------------------------------------------

struct AnalyzeFormArgs {
  std::string input;
  bool search_witness = false;
  int witness_iters = 1200;
};

int run_analyze_form(const CommonOpts& o, const AnalyzeFormArgs& a) {
  const GramForm g = form_from_json(load_json_file(a.input));
  const bool herm = g.is_hermitian(o.tol);

  std::ostringstream text;
  text << "command: analyze-form\n";
  text << "input: " << a.input << "\n";
  text << "dims: m=" << g.dims.m << " n=" << g.dims.n << "\n";
  text << "hermitian: " << yesno(herm) << "\n";

  Json report;
  report["command"] = "analyze-form";
  report["input"] = a.input;
  report["m"] = g.dims.m;
  report["n"] = g.dims.n;
  report["hermitian"] = herm;

  if (!herm) {
    text << "remaining verdicts require a Hermitian Gram matrix\n";
    if (o.emit_requested()) {
      report["files"] = files_json({"form_report.json"});
      report["provenance"] = o.provenance();
      write_json_file(out_path(o, "form_report.json"), report);
      text << "wrote: form_report.json\n";
    }
    std::cout << text.str();
    return kOk;
  }

  const double wmin = min_eigenvalue(hermitize(g.W));
  const double wpt_min = min_eigenvalue(hermitize(partial_transpose_second(g.W, g.dims)));
  const bool blf = wmin >= -o.tol;
  const bool slf = wpt_min >= -o.tol;
  text << "bilinear sum of squares: " << yesno(blf) << " (gram min eigenvalue " << num(wmin)
       << ")\n";
  text << "sesquilinear sum of squares: " << yesno(slf) << " (partial transpose min eigenvalue "
       << num(wpt_min) << ")\n";
  const SeesawReport rep = seesaw_min(g, o.seesaw());
  text << "see-saw product minimum: " << num(rep.value) << "\n";
  text << "positive on product pairs: " << (rep.value >= -o.tol ? "yes (heuristic)" : "no")
       << "\n";
  report["gram_min_eig"] = wmin;
  report["gram_pt_min_eig"] = wpt_min;
  report["bilinear_sos"] = blf;
  report["sesquilinear_sos"] = slf;
  report["see_saw_min"] = rep.value;
  report["positive_on_products"] = rep.value >= -o.tol;

  TriState dec = TriState::undecided;
  std::optional<DecomposabilityCert> cert;
  std::optional<IndecomposabilityWitness> wit;
  const std::size_t nn = g.dims.total();
  if (blf) {
    dec = TriState::yes;
    cert = DecomposabilityCert{g.dims, hermitize(g.W), ComplexMatrix(nn, nn)};
  } else if (slf) {
    dec = TriState::yes;
    cert = DecomposabilityCert{g.dims, ComplexMatrix(nn, nn),
                               hermitize(partial_transpose_second(g.W, g.dims))};
  } else if (a.search_witness) {
    WitnessSearchConfig wcfg;
    wcfg.iters = a.witness_iters;
    wcfg.dykstra_iters = 16;
    wcfg.polish_iters = 40;
    wcfg.tol = o.tol;
    wit = witness_search(g, wcfg);
    if (wit) dec = TriState::no;
  }
  text << "decomposable: " << to_string(dec) << "\n";
  if (wit) text << "witness pairing value: " << num(wit->trace_value) << "\n";
  report["decomposable"] = to_string(dec);

  if (cert && !verify_decomposability(g, *cert, o.tol))
    throw std::runtime_error("internal error: splitting certificate failed verification");

  if (cert)
    report["certificate"] = cert_to_json(*cert);
  else if (wit)
    report["certificate"] = witness_to_json(*wit);
  else
    report["certificate"] = nullptr;

  if (o.emit_requested()) {
    std::vector<std::string> files;
    if (cert || wit) {
      Json cj = cert ? cert_to_json(*cert) : witness_to_json(*wit);
      write_json_file(out_path(o, "form_cert.json"), cj);
      files.push_back("form_cert.json");
    }
    files.push_back("form_report.json");
    report["files"] = files_json(files);
    report["provenance"] = o.provenance();
    write_json_file(out_path(o, "form_report.json"), report);
    text << "wrote: " << joined(files) << "\n";
  }
  std::cout << text.str();
  return kOk;
}

// ---------------------------------------------------------------------------
// verify-cert
// ---------------------------------------------------------------------------

struct VerifyCertArgs {
  std::string form_path;
  std::string cert_path;
};

int run_verify_cert(const CommonOpts& o, const VerifyCertArgs& a) {
  const GramForm g = form_from_json(load_json_file(a.form_path));
  const CertificateVariant cv = cert_from_json(load_json_file(a.cert_path));

  std::ostringstream text;
  text << "command: verify-cert\n";
  text << "form: " << a.form_path << "\n";
  text << "certificate: " << a.cert_path << "\n";

  bool ok = false;
  if (std::holds_alternative<DecomposabilityCert>(cv)) {
    const auto& cert = std::get<DecomposabilityCert>(cv);
    ok = verify_decomposability(g, cert, o.tol);
    const double resid =
        max_abs(cert.Q + partial_transpose_second(cert.R, cert.dims) - g.W);
    text << "kind: decomposable\n";
    text << "reconstruction residual: " << num(resid) << "\n";
  } else {
    const auto& wit = std::get<IndecomposabilityWitness>(cv);
    ok = verify_indecomposability(g, wit, o.tol);
    const double pairing = witness_trace(g, wit.M);
    text << "kind: indecomposable-witness\n";
    text << "pairing value: " << num(pairing) << "\n";
    text << "stored trace value: " << num(wit.trace_value) << "\n";
    if (std::abs(pairing - wit.trace_value) > o.tol * std::max(1.0, std::abs(wit.trace_value))) {
      text << "stored trace value does not match the recomputed pairing\n";
      ok = false;
    }
  }
  text << "verified: " << yesno(ok) << "\n";
  std::cout << text.str();
  return ok ? kOk : kInputError;
}

// ---------------------------------------------------------------------------
// gallery
// ---------------------------------------------------------------------------

struct GalleryArgs {
  std::string name;
  double a = 0.0;
  std::size_t m = 3;
  std::size_t n = 0;
  std::string eps_str;
  int witness_iters = 1200;
  CLI::Option* a_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* eps_opt = nullptr;
};

int run_gallery(const CommonOpts& o, const GalleryArgs& a) {
  std::ostringstream text;
  text << "command: gallery " << a.name << "\n";
  Json report;
  report["command"] = "gallery";
  report["family"] = a.name;
  std::vector<std::string> files;

  if (a.name == "pi") {
    std::optional<double> eps;
    if (a.eps_opt->count() > 0) eps = parse_scalar(a.eps_str, "--eps");
    const PiWitnessResult r = pi_indecomposable_witness(eps);
    if (!verify_indecomposability(r.form, r.witness, o.tol))
      throw std::runtime_error("internal error: witness failed verification");
    text << "dims: m=3 n=3\n";
    text << "product gap delta: " << num(r.delta) << "\n";
    text << "eps: " << num(r.eps) << "\n";
    text << "witness trace: " << num(r.witness.trace_value) << "\n";
    text << "witness verified: yes\n";
    report["m"] = 3;
    report["n"] = 3;
    report["delta"] = r.delta;
    report["eps"] = r.eps;
    report["witness_trace"] = r.witness.trace_value;
    report["certificate"] = witness_to_json(r.witness);
    write_json_file(out_path(o, "pi_form.json"), form_to_json(r.form));
    write_json_file(out_path(o, "pi_cert.json"), witness_to_json(r.witness));
    files = {"pi_form.json", "pi_cert.json", "pi_report.json"};
  } else if (a.name == "horodecki") {
    const ComplexMatrix rho = horodecki_state();
    const BipartiteDims dims{2, 4};
    const EdgeReport er = edge_check(rho, dims, o.seesaw(), 0.0, o.tol);
    const double eps =
        a.eps_opt->count() > 0 ? parse_scalar(a.eps_str, "--eps") : 0.5 * er.delta;
    if (!(eps > 0.0) || eps > er.delta)
      throw std::invalid_argument("--eps must lie in (0, delta]");
    const GramForm shifted = shift_form(er.gram, eps);
    const IndecomposabilityWitness wit{dims, rho, witness_trace(shifted, rho)};
    if (!verify_indecomposability(shifted, wit, o.tol))
      throw std::runtime_error("internal error: witness failed verification");
    text << "dims: m=2 n=4\n";
    text << "ppt: yes\n";
    text << "edge: " << to_string(er.is_edge) << "\n";
    text << "product gap delta: " << num(er.delta) << "\n";
    text << "eps: " << num(eps) << "\n";
    text << "witness trace: " << num(wit.trace_value) << "\n";
    text << "witness verified: yes\n";
    report["m"] = 2;
    report["n"] = 4;
    report["ppt"] = true;
    report["edge"] = to_string(er.is_edge);
    report["delta"] = er.delta;
    report["eps"] = eps;
    report["witness_trace"] = wit.trace_value;
    report["certificate"] = witness_to_json(wit);
    write_json_file(out_path(o, "horodecki_state.json"), matrix_to_json(rho));
    write_json_file(out_path(o, "horodecki_form.json"), form_to_json(shifted));
    write_json_file(out_path(o, "horodecki_cert.json"), witness_to_json(wit));
    files = {"horodecki_state.json", "horodecki_form.json", "horodecki_cert.json",
             "horodecki_report.json"};
  } else if (a.name == "phi") {
    PhiFamilySpec spec;
    spec.m = a.m_opt->count() > 0 ? a.m : 3;
    spec.eps = a.eps_opt->count() > 0 ? parse_weights(a.eps_str) : std::vector<double>{1.0, 1.0};
    spec.n = a.n_opt->count() > 0 ? a.n : spec.m + spec.eps.size() - 1;
    spec.a = 0.0;
    const std::vector<double> s = phi_s_profile(spec);
    const double smax = *std::max_element(s.begin(), s.end());
    spec.a = a.a_opt->count() > 0 ? a.a : smax;
    validate_phi_spec(spec);

    const LinearMapRep rep = phi_family_map(spec);
    const GramForm g = choi_to_gram(rep);
    const DecomposabilityCert cert = phi_decomposability_cert(spec);
    if (!verify_decomposability(g, cert, o.tol))
      throw std::runtime_error("internal error: splitting certificate failed verification");
    const double resid = max_abs(cert.Q + partial_transpose_second(cert.R, g.dims) - g.W);
    text << "dims: m=" << spec.m << " n=" << spec.n << "\n";
    text << "weights: " << Json(spec.eps).dump() << "\n";
    text << "column weight sums: " << Json(s).dump() << "\n";
    text << "decomposability threshold max s_j: " << num(smax) << "\n";
    text << "a: " << num(spec.a) << "\n";
    text << "reconstruction residual: " << num(resid) << "\n";
    text << "decomposable: yes\n";
    text << "certificate verified: yes\n";
    if (spec.m == 2) {
      const double lam = hermitian_eig(phi_j_epsilon(spec.eps)).values.back();
      text << "positivity threshold (m = 2): " << num(lam) << "\n";
      text << "positive: " << yesno(spec.a >= lam - 1e-12) << "\n";
    } else {
      text << "positive: yes (decomposable with a above threshold)\n";
    }
    report["m"] = spec.m;
    report["n"] = spec.n;
    report["a"] = spec.a;
    report["weights"] = Json(spec.eps);
    report["column_weight_sums"] = Json(s);
    report["threshold_max_s"] = smax;
    report["reconstruction_residual"] = resid;
    report["decomposable"] = "yes";
    report["certificate"] = cert_to_json(cert);
    write_json_file(out_path(o, "phi_form.json"), form_to_json(g));
    write_json_file(out_path(o, "phi_cert.json"), cert_to_json(cert));
    files = {"phi_form.json", "phi_cert.json", "phi_report.json"};
  } else if (a.name == "tau41") {
    const LinearMapRep rep = tau41();
    const GramForm g = choi_to_gram(rep);
    const double choi_min = min_eigenvalue(hermitize(rep.choi));
    const double choi_pt_min =
        min_eigenvalue(hermitize(partial_transpose_second(rep.choi, rep.dims)));
    const SeesawReport mrep = seesaw_min(g, o.seesaw());
    WitnessSearchConfig wcfg;
    wcfg.iters = a.witness_iters;
    wcfg.dykstra_iters = 16;
    wcfg.polish_iters = 40;
    wcfg.tol = o.tol;
    const auto wit = witness_search(g, wcfg);
    if (!wit)
      throw std::runtime_error("witness search did not converge; raise --witness-iters");
    text << "dims: m=4 n=4\n";
    text << "choi min eigenvalue: " << num(choi_min) << "\n";
    text << "choi partial transpose min eigenvalue: " << num(choi_pt_min) << "\n";
    text << "completely positive: no\n";
    text << "completely copositive: no\n";
    text << "see-saw product minimum: " << num(mrep.value) << "\n";
    text << "positive: yes (heuristic)\n";
    text << "witness pairing value: " << num(wit->trace_value) << "\n";
    text << "decomposable: no\n";
    text << "witness verified: yes\n";
    report["m"] = 4;
    report["n"] = 4;
    report["choi_min_eig"] = choi_min;
    report["choi_pt_min_eig"] = choi_pt_min;
    report["see_saw_min"] = mrep.value;
    report["witness_trace"] = wit->trace_value;
    report["decomposable"] = "no";
    report["certificate"] = witness_to_json(*wit);
    write_json_file(out_path(o, "tau41_form.json"), form_to_json(g));
    write_json_file(out_path(o, "tau41_cert.json"), witness_to_json(*wit));
    files = {"tau41_form.json", "tau41_cert.json", "tau41_report.json"};
  } else if (a.name == "upb") {
    const UpbFamily fam = tiles_upb();
    std::optional<double> eps;
    if (a.eps_opt->count() > 0) eps = parse_scalar(a.eps_str, "--eps");
    const UpbWitnessResult r = upb_witness(fam, eps, o.seesaw(), o.tol);
    if (!verify_indecomposability(r.form, r.witness, o.tol))
      throw std::runtime_error("internal error: witness failed verification");
    text << "dims: m=3 n=3\n";
    text << "family size: " << fam.vectors.size() << "\n";
    text << "product gap delta: " << num(r.delta) << "\n";
    text << "eps: " << num(r.eps) << "\n";
    text << "witness trace: " << num(r.witness.trace_value) << "\n";
    text << "witness verified: yes\n";
    report["m"] = 3;
    report["n"] = 3;
    report["family_size"] = fam.vectors.size();
    report["delta"] = r.delta;
    report["eps"] = r.eps;
    report["witness_trace"] = r.witness.trace_value;
    report["certificate"] = witness_to_json(r.witness);
    write_json_file(out_path(o, "upb_form.json"), form_to_json(r.form));
    write_json_file(out_path(o, "upb_cert.json"), witness_to_json(r.witness));
    files = {"upb_form.json", "upb_cert.json", "upb_report.json"};
  } else {
    throw std::invalid_argument("unknown gallery entry \"" + a.name +
                                "\"; choose pi, horodecki, phi, tau41, upb");
  }

  report["files"] = files_json(files);
  report["provenance"] = o.provenance();
  write_json_file(out_path(o, a.name + "_report.json"), report);
  text << "wrote: " << joined(files) << "\n";
  std::cout << text.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positivity and decomposability analysis for bilinear-sesquilinear forms"};
  app.set_version_flag("--version", std::string("choipoly ") + kVersion);
  app.require_subcommand(1);

  CommonOpts co_map, co_state, co_form, co_cert, co_gal;

  auto* sm = app.add_subcommand("analyze-map", "classify a linear map given by its Choi matrix");
  AnalyzeMapArgs am;
  sm->add_option("input", am.input, "map JSON path or builtin name (tau41)")->required();
  sm->add_flag("--require-positive", am.require_positive,
               "exit with code 2 when the map is not positive");
  sm->add_flag("--search-witness", am.search_witness,
               "run the witness search when PSD shortcuts fail");
  sm->add_option("--witness-iters", am.witness_iters, "witness search iterations")
      ->capture_default_str();
  add_common(sm, co_map);

  auto* ss = app.add_subcommand("analyze-state", "PPT and edge analysis of a bipartite state");
  AnalyzeStateArgs as;
  ss->add_option("input", as.input, "state matrix JSON path or builtin name (horodecki)")
      ->required();
  as.dims_opt = ss->add_option("--dims", as.dims_str, "factor dimensions as m,n");
  ss->add_flag("--edge", as.edge, "run the edge test (requires a PPT state)");
  as.eps_opt = ss->add_option(
      "--eps", as.eps, "shift for the witness pair; must lie in (0, delta], implies --edge");
  add_common(ss, co_state);

  auto* sf = app.add_subcommand("analyze-form", "sum-of-squares and positivity analysis");
  AnalyzeFormArgs af;
  sf->add_option("input", af.input, "form JSON path")->required();
  sf->add_flag("--search-witness", af.search_witness,
               "run the witness search when PSD shortcuts fail");
  sf->add_option("--witness-iters", af.witness_iters, "witness search iterations")
      ->capture_default_str();
  add_common(sf, co_form);

  auto* sv = app.add_subcommand("verify-cert", "check a certificate against a form");
  VerifyCertArgs vc;
  sv->add_option("form", vc.form_path, "form JSON path")->required();
  sv->add_option("cert", vc.cert_path, "certificate JSON path")->required();
  add_common(sv, co_cert);

  auto* sg = app.add_subcommand("gallery", "built-in families with certificates");
  GalleryArgs ga;
  sg->add_option("name", ga.name, "pi, horodecki, phi, tau41 or upb")->required();
  ga.a_opt = sg->add_option("--a", ga.a, "phi family trace coefficient (default: max s_j)");
  ga.m_opt = sg->add_option("--m", ga.m, "phi family input dimension")->capture_default_str();
  ga.n_opt = sg->add_option("--n", ga.n, "phi family output dimension (default: m + r)");
  ga.eps_opt = sg->add_option(
      "--eps", ga.eps_str,
      "phi: comma-separated weights; pi, horodecki, upb: witness shift in (0, delta]");
  sg->add_option("--witness-iters", ga.witness_iters, "witness search iterations (tau41)")
      ->capture_default_str();
  add_common(sg, co_gal);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (sm->parsed()) return run_analyze_map(co_map, am);
    if (ss->parsed()) return run_analyze_state(co_state, as);
    if (sf->parsed()) return run_analyze_form(co_form, af);
    if (sv->parsed()) return run_verify_cert(co_cert, vc);
    if (sg->parsed()) return run_gallery(co_gal, ga);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
