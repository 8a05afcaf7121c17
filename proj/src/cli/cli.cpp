#include "pegboard/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pegboard/curve_text.hpp"
#include "pegboard/differential.hpp"
#include "pegboard/errors.hpp"
#include "pegboard/ledger.hpp"
#include "pegboard/pairing.hpp"
#include "pegboard/render.hpp"
#include "pegboard/zoo.hpp"

namespace pegboard::cli {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kSchemaVersion = 1;
constexpr long kMaxP = 64;
constexpr long kMaxQ = 32;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadSpec, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> zoo_dir_files() {
  std::vector<fs::path> out;
  const char* dir = std::getenv("PEGBOARD_ZOO_DIR");
  if (dir == nullptr || !fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".curve") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CurveDiagram resolve_knot(std::string_view selector) {
  const std::string sel(selector);
  if (sel.find('/') != std::string::npos || sel.ends_with(".curve")) {
    if (fs::is_regular_file(sel)) return parse_curve_text(read_file(sel), sel);
  }
  for (const auto& f : zoo_dir_files()) {
    if (f.stem() == sel) return parse_curve_text(read_file(f), f.string());
  }
  return build_zoo(sel);
}

namespace {

struct Violation {
  std::string id;
  std::string detail;
};

// One command's artifact in every format it supports.
struct Result {
  ordered_json json = ordered_json::object();
  std::string text;
  std::vector<std::vector<std::string>> csv;  // first row is the header
  std::optional<std::string> svg;
  std::vector<Violation> violations;
};

ordered_json envelope(const std::string& command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string b2s(bool b) { return b ? "true" : "false"; }
std::string l2s(long v) { return std::to_string(v); }

ordered_json dims_json(const std::map<Rational, long>& dims) {
  ordered_json j = ordered_json::object();
  for (const auto& [h, c] : dims) j[h.str()] = c;
  return j;
}

SlopeSpec parse_slope(const std::string& text, bool allow_vertical) {
  SlopeSpec s = SlopeSpec::parse(text);
  if (s.vertical() && !allow_vertical) {
    throw Error(ErrorCode::BadSpec, "slope 1/0 is accepted only by hfk");
  }
  if (!s.vertical() && (std::abs(s.p) > kMaxP || s.q > kMaxQ)) {
    throw Error(ErrorCode::BadSpec, "slope " + s.str() + " outside |p| <= 64, q <= 32");
  }
  return s;
}

// ---- knot commands ----

Result cmd_zoo_list() {
  Result r;
  r.json = envelope("zoo list");
  ordered_json entries = ordered_json::array();
  r.csv.push_back({"name", "description", "source"});
  for (const auto& e : zoo()) {
    entries.push_back({{"name", e.name}, {"description", e.description}, {"source", "builtin"}});
    r.csv.push_back({e.name, e.description, "builtin"});
    r.text += e.name + "  " + e.description + "\n";
  }
  for (const auto& f : zoo_dir_files()) {
    entries.push_back({{"name", f.stem().string()}, {"description", f.string()}, {"source", "file"}});
    r.csv.push_back({f.stem().string(), f.string(), "file"});
    r.text += f.stem().string() + "  " + f.string() + "\n";
  }
  r.json["knots"] = entries;
  return r;
}

ordered_json pairing_json(const PairingReport& p) {
  ordered_json j;
  j["slope"] = p.slope.str();
  j["mode"] = p.mode == PairingMode::SurgeryLine ? "surgery" : "arc";
  j["total"] = p.total;
  j["raw_total"] = p.raw_total;
  j["cancelled"] = static_cast<long>(p.cancelled.size());
  if (p.mode == PairingMode::Arc) j["counts"] = dims_json(p.counts);
  j["flags"] = p.flags;
  return j;
}

Result cmd_pair(const std::string& knot, const std::vector<std::string>& slope_args) {
  const CurveDiagram d = resolve_knot(knot);
  Result r;
  r.json = envelope("pair");
  r.json["knot"] = knot;
  r.csv.push_back({"slope", "total", "raw_total", "cancelled", "flags"});
  std::vector<PairingReport> reports;
  for (const auto& a : slope_args) reports.push_back(surgery_report(d, parse_slope(a, false)));
  for (const auto& p : reports) {
    std::string flags;
    for (const auto& f : p.flags) flags += (flags.empty() ? "" : "; ") + f;
    r.csv.push_back({p.slope.str(), l2s(p.total), l2s(p.raw_total), l2s(static_cast<long>(p.cancelled.size())), flags});
    r.text += knot + " " + p.slope.str() + ": dim = " + l2s(p.total) + " (raw " + l2s(p.raw_total) + ")";
    if (!flags.empty()) r.text += " [" + flags + "]";
    r.text += "\n";
  }
  if (reports.size() == 1) {
    const ordered_json one = pairing_json(reports.front());
    for (const auto& [k, v] : one.items()) r.json[k] = v;
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& p : reports) arr.push_back(pairing_json(p));
    r.json["reports"] = arr;
  }
  return r;
}

Result cmd_hfk(const std::string& knot, const std::string& slope_arg) {
  const CurveDiagram d = resolve_knot(knot);
  const PairingReport p = dual_hfk_report(d, parse_slope(slope_arg, true));
  Result r;
  r.json = envelope("hfk");
  r.json["knot"] = knot;
  r.json["slope"] = p.slope.str();
  r.json["dims"] = dims_json(p.counts);
  r.json["total"] = p.total;
  r.json["raw_total"] = p.raw_total;
  r.csv.push_back({"grading", "dim"});
  r.text = knot + " " + p.slope.str() + " dual knot Floer dims (total " + l2s(p.total) + ")\n";
  for (const auto& [h, c] : p.counts) {
    r.csv.push_back({h.str(), l2s(c)});
    r.text += "  " + h.str() + ": " + l2s(c) + "\n";
  }
  return r;
}

ordered_json matrix_json(const DiffMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : m.entries) {
    ordered_json rj = ordered_json::array();
    for (auto v : row) rj.push_back(static_cast<int>(v));
    rows.push_back(rj);
  }
  return {{"kind", to_string(m.kind)},
          {"source_grading", m.source_grading.str()},
          {"target_grading", m.target_grading.str()},
          {"sources", static_cast<long>(m.sources.size())},
          {"targets", static_cast<long>(m.targets.size())},
          {"rank", m.rank},
          {"kernel", m.kernel_dim()},
          {"bigons", static_cast<long>(m.bigons.size())},
          {"entries", rows}};
}

std::string extremum_name(ExtremumKind k) { return k == ExtremumKind::Max ? "max" : "min"; }

Result cmd_diff(const std::string& knot, const std::string& slope_arg) {
  const CurveDiagram d = resolve_knot(knot);
  const SlopeSpec s = parse_slope(slope_arg, false);
  if (s.p == 0) throw Error(ErrorCode::ZeroSurgery, zero_surgery_flag());
  const auto phi = all_differentials(d, s, DiffKind::Phi);
  const auto psi = all_differentials(d, s, DiffKind::Psi);
  const CensusBound census = census_bounds(d, s);
  const SpectralReport spec = spectral_check(d, s);
  const long genus = genus_of(d);

  Result r;
  r.json = envelope("diff");
  r.json["knot"] = knot;
  r.json["slope"] = s.str();
  r.csv.push_back({"kind", "source_grading", "target_grading", "sources", "targets", "rank", "kernel", "census_bound"});
  r.text = knot + " " + s.str() + " first differentials\n";

  ordered_json checks = ordered_json::array();
  auto check = [&](const std::string& id, bool ok, const std::string& detail) {
    checks.push_back({{"id", id}, {"ok", ok}, {"detail", detail}});
    r.text += std::string("  check ") + id + ": " + (ok ? "ok" : "VIOLATED") + " (" + detail + ")\n";
    if (!ok) r.violations.push_back({id, knot + " " + s.str() + ": " + detail});
  };

  long rank_phi = 0, rank_psi = 0;
  bool bounds_ok = true;
  std::string bound_detail = "every rank meets its census bound";
  for (const auto* list : {&phi, &psi}) {
    ordered_json arr = ordered_json::array();
    for (const auto& m : *list) {
      const long bound = m.kind == DiffKind::Phi ? census.phi_at(m.source_grading) : census.psi_at(m.source_grading);
      (m.kind == DiffKind::Phi ? rank_phi : rank_psi) += m.rank;
      if (m.rank < bound && bounds_ok) {
        bounds_ok = false;
        bound_detail = to_string(m.kind) + " at " + m.source_grading.str() + " has rank " + l2s(m.rank) +
                       " below bound " + l2s(bound);
      }
      auto mj = matrix_json(m);
      mj["census_bound"] = bound;
      arr.push_back(mj);
      r.csv.push_back({to_string(m.kind), m.source_grading.str(), m.target_grading.str(),
                       l2s(static_cast<long>(m.sources.size())), l2s(static_cast<long>(m.targets.size())),
                       l2s(m.rank), l2s(m.kernel_dim()), l2s(bound)});
      r.text += "  " + to_string(m.kind) + " " + m.source_grading.str() + " -> " + m.target_grading.str() +
                ": " + l2s(static_cast<long>(m.sources.size())) + "x" + l2s(static_cast<long>(m.targets.size())) +
                " rank " + l2s(m.rank) + " (bound " + l2s(bound) + ")\n";
    }
    r.json[list == &phi ? "phi" : "psi"] = arr;
  }
  r.json["rank_phi"] = rank_phi;
  r.json["rank_psi"] = rank_psi;

  ordered_json cj;
  cj["phi"] = dims_json(census.phi);
  cj["psi"] = dims_json(census.psi);
  cj["exception"] = census.exception ? ordered_json(*census.exception) : ordered_json(nullptr);
  ordered_json contribs = ordered_json::array();
  for (const auto& c : census.contributions) {
    contribs.push_back({{"component", static_cast<long>(c.component)},
                        {"extremum", extremum_name(c.extremum.kind)},
                        {"height", c.extremum.height},
                        {"kind", to_string(c.kind)},
                        {"grading", c.grading.str()},
                        {"discounted", c.discounted}});
  }
  cj["contributions"] = contribs;
  r.json["census"] = cj;
  r.json["spectral"] = {{"dual_total", spec.dual_total}, {"rank_psi", spec.rank_psi},
                        {"rank_phi", spec.rank_phi}, {"surgery", spec.surgery},
                        {"page_bound", spec.page_bound()}, {"equality", spec.equality()}};
  r.json["lspace"] = is_lspace_slope(d, s);
  r.json["genus"] = genus;

  check("census-rank-bound", bounds_ok, bound_detail);
  check("phi-psi-duality", rank_phi == rank_psi, "rank Phi " + l2s(rank_phi) + ", rank Psi " + l2s(rank_psi));
  check("spectral-inequality", spec.holds(),
        "dual total - 2 rank Psi = " + l2s(spec.page_bound()) + " vs surgery " + l2s(spec.surgery));
  long acyclic = 0;
  for (const auto& c : d.components) acyclic += c.winding == 0 ? 1 : 0;
  check("acyclic-rank-bound", rank_phi >= acyclic && rank_psi >= acyclic,
        l2s(acyclic) + " acyclic components");
  if (genus >= 1 && s.p > 0) {
    // Extreme source gradings of a nontrivial knot at positive slopes.
    const Rational top = Rational(genus) + Rational(s.p - 1, 2);
    long ker_top = 0, ker_bottom = 0;
    for (const auto& m : phi) if (m.source_grading == top) ker_top = m.kernel_dim();
    for (const auto& m : psi) if (m.source_grading == -top) ker_bottom = m.kernel_dim();
    check("extreme-kernel-bound", ker_top <= 1 && ker_bottom <= 1,
          "Phi kernel at " + top.str() + " is " + l2s(ker_top) + ", Psi kernel at " + (-top).str() + " is " +
              l2s(ker_bottom));
  }
  r.json["checks"] = checks;
  return r;
}

Result cmd_invariants(const std::string& knot) {
  const CurveDiagram d = resolve_knot(knot);
  const long genus = genus_of(d);
  const TauEpsilon te = tau_epsilon(d);
  const ExtremaCensus census = extrema_census(d);
  Result r;
  r.json = envelope("invariants");
  r.json["knot"] = knot;
  r.json["genus"] = genus;
  r.json["tau"] = te.tau;
  r.json["epsilon"] = te.epsilon;
  ordered_json comps = ordered_json::array();
  for (std::size_t i = 0; i < census.per_component.size(); ++i) {
    ordered_json ex = ordered_json::array();
    for (const auto& e : census.per_component[i]) {
      ex.push_back({{"kind", extremum_name(e.kind)}, {"height", e.height}});
    }
    comps.push_back({{"component", static_cast<long>(i)},
                     {"distinguished", d.components[i].winding == 1},
                     {"extrema", ex}});
  }
  auto counts = [](const std::map<long, long>& m) {
    ordered_json j = ordered_json::object();
    for (const auto& [h, c] : m) j[l2s(h)] = c;
    return j;
  };
  r.json["extrema"] = comps;
  r.json["n_plus"] = counts(census.n_plus);
  r.json["n_minus"] = counts(census.n_minus);
  r.csv = {{"invariant", "value"}, {"genus", l2s(genus)}, {"tau", l2s(te.tau)}, {"epsilon", l2s(te.epsilon)}};
  r.text = knot + ": genus " + l2s(genus) + ", tau " + l2s(te.tau) + ", epsilon " + l2s(te.epsilon) + "\n";
  for (std::size_t i = 0; i < census.per_component.size(); ++i) {
    r.text += "  component " + l2s(static_cast<long>(i)) + ":";
    for (const auto& e : census.per_component[i]) r.text += " " + extremum_name(e.kind) + "@" + l2s(e.height);
    r.text += "\n";
  }
  return r;
}

Result cmd_scan(const std::string& knot, long pmax, long qmax) {
  if (pmax < 1 || qmax < 1 || pmax > kMaxP || qmax > kMaxQ) {
    throw Error(ErrorCode::BadSpec, "scan bounds must satisfy 1 <= pmax <= 64, 1 <= qmax <= 32");
  }
  const CurveDiagram d = resolve_knot(knot);
  const auto verdicts = dually_simple_scan(d, pmax, qmax);
  Result r;
  r.json = envelope("scan-simple");
  r.json["knot"] = knot;
  r.json["pmax"] = pmax;
  r.json["qmax"] = qmax;
  r.json["genus"] = genus_of(d);
  ordered_json arr = ordered_json::array();
  r.csv.push_back({"slope", "dual_total", "surgery", "lspace", "beyond_genus_bound", "violation"});
  r.text = knot + ": " + l2s(static_cast<long>(verdicts.size())) + " dually simple slopes with |p| <= " +
           l2s(pmax) + ", q <= " + l2s(qmax) + "\n";
  for (const auto& v : verdicts) {
    arr.push_back({{"slope", v.slope.str()}, {"dual_total", v.dual_total}, {"surgery", v.surgery},
                   {"lspace", v.lspace}, {"beyond_genus_bound", v.beyond_genus_bound},
                   {"violation", v.violation()}});
    r.csv.push_back({v.slope.str(), l2s(v.dual_total), l2s(v.surgery), b2s(v.lspace), b2s(v.beyond_genus_bound),
                     b2s(v.violation())});
    r.text += "  " + v.slope.str() + ": dim " + l2s(v.surgery) + (v.violation() ? "  VIOLATION" : "") + "\n";
    if (v.violation()) {
      r.violations.push_back({"dually-simple-dimension",
                              knot + " " + v.slope.str() + " is dually simple but not an L-space slope beyond 2g-1"});
    }
  }
  r.json["slopes"] = arr;
  return r;
}

Result cmd_render(const std::string& knot, const std::vector<std::string>& overlays,
                  const std::vector<std::string>& window) {
  const CurveDiagram d = resolve_knot(knot);
  RenderSpec spec;
  for (const auto& o : overlays) spec.overlays.push_back(Overlay::parse(o));
  if (!window.empty()) {
    if (window.size() != 2) throw Error(ErrorCode::BadSpec, "--window takes two values");
    spec.window = std::pair{Rational::parse(window[0]), Rational::parse(window[1])};
  }
  Result r;
  r.svg = render_svg(d, spec);
  return r;
}

// ---- ledger commands ----

ordered_json cert_json(const ledger::TorsionCertificate& c) {
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : c.inputs) inputs[k] = v;
  return {{"target", c.target}, {"rule", c.rule}, {"inputs", inputs}, {"lower_bound", c.lower_bound},
          {"notes", c.notes}};
}

void add_cert(Result& r, const ledger::TorsionCertificate& c) {
  r.json["certificate"] = cert_json(c);
  r.csv.push_back({"certificate_rule", c.rule});
  r.csv.push_back({"certificate_target", c.target});
  r.csv.push_back({"lower_bound", l2s(c.lower_bound)});
  r.text += "2-torsion of " + c.target + " >= " + l2s(c.lower_bound) + " [" + c.rule + "]\n";
  for (const auto& n : c.notes) r.text += "  note: " + n + "\n";
}

Result ledger_result(const std::string& op) {
  Result r;
  r.json = envelope("ledger " + op);
  r.csv.push_back({"key", "value"});
  return r;
}

void sequence_out(Result& r, const ledger::LedgerSequence& s) {
  ordered_json vals = ordered_json::object();
  ordered_json prov = ordered_json::object();
  r.csv = {{"n", "value", "bundle", "coefficient"}};
  for (const auto& [n, v] : s.values) {
    vals[l2s(n)] = v;
    prov[l2s(n)] = s.provenance.count(n) ? s.provenance.at(n) : "input";
    r.csv.push_back({l2s(n), l2s(v), ledger::to_string(s.bundle), ledger::to_string(s.coefficient)});
    r.text += l2s(n) + ": " + l2s(v) + "\n";
  }
  r.json["bundle"] = ledger::to_string(s.bundle);
  r.json["coefficient"] = ledger::to_string(s.coefficient);
  r.json["values"] = vals;
  r.json["provenance"] = prov;
}

ledger::Shape parse_shape(const std::string& s) {
  if (s == "V") return ledger::Shape::V;
  if (s == "W") return ledger::Shape::W;
  if (s == "generalized-W" || s == "GW") return ledger::Shape::GeneralizedW;
  throw Error(ErrorCode::BadShape, "shape must be V, W or generalized-W");
}

ordered_json shape_json(const ledger::ShapeClass& s) {
  return {{"kind", ledger::to_string(s.kind)}, {"nu_plus", s.nu_plus}, {"nu_minus", s.nu_minus},
          {"width", s.width().str()}};
}

// Sequence files hold several (bundle, coefficient) blocks; pick one.
ledger::LedgerSequence pick(const std::vector<ledger::LedgerSequence>& seqs, ledger::Bundle b,
                            ledger::Coefficient c) {
  for (const auto& s : seqs) {
    if (s.bundle == b && s.coefficient == c) return s;
  }
  throw Error(ErrorCode::RangeTooSmall, "input lacks the " + ledger::to_string(b) + "/" + ledger::to_string(c) +
                                            " sequence");
}

Result ledger_classify(const std::string& path) {
  const auto seqs = ledger::parse_sequences_csv(read_file(path));
  const auto d0 = pick(seqs, ledger::Bundle::Trivial, ledger::Coefficient::F2);
  const auto dmu = pick(seqs, ledger::Bundle::Mu, ledger::Coefficient::F2);
  Result r = ledger_result("classify");
  const auto rep = ledger::f2_shape_classify(d0, dmu);
  r.json["shape"] = shape_json(rep.shape);
  r.json["mu_shape"] = shape_json(rep.mu_shape);
  r.json["w0"] = rep.w0.str();
  r.json["w_mu"] = rep.w_mu.str();
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"rule", c.rule}, {"n", c.n}, {"status", c.status}, {"detail", c.detail}});
  }
  r.json["checks"] = checks;
  r.csv.push_back({"shape", ledger::to_string(rep.shape.kind)});
  r.csv.push_back({"nu_plus", l2s(rep.shape.nu_plus)});
  r.csv.push_back({"nu_minus", l2s(rep.shape.nu_minus)});
  r.csv.push_back({"w0", rep.w0.str()});
  r.csv.push_back({"w_mu", rep.w_mu.str()});
  r.text = "shape " + ledger::to_string(rep.shape.kind) + ", nu+ = " + l2s(rep.shape.nu_plus) +
           ", nu- = " + l2s(rep.shape.nu_minus) + ", w0 = " + rep.w0.str() + ", w_mu = " + rep.w_mu.str() + "\n";
  long unconstrained = 0;
  for (const auto& c : rep.checks) unconstrained += c.status == "unconstrained" ? 1 : 0;
  r.text += l2s(static_cast<long>(rep.checks.size())) + " constraint checks passed (" + l2s(unconstrained) +
            " unconstrained)\n";
  return r;
}

Result ledger_t2(const std::string& path, long nu) {
  const auto seqs = ledger::parse_sequences_csv(read_file(path));
  const auto c = pick(seqs, ledger::Bundle::Trivial, ledger::Coefficient::C);
  const auto f = pick(seqs, ledger::Bundle::Trivial, ledger::Coefficient::F2);
  const auto rep = ledger::t2_monotone_check(c, f, nu);
  Result r = ledger_result("t2");
  r.csv = {{"n", "t2"}};
  ordered_json t2 = ordered_json::object();
  for (const auto& [n, t] : rep.t2) {
    t2[l2s(n)] = t;
    r.csv.push_back({l2s(n), l2s(t)});
    r.text += l2s(n) + ": t2 = " + l2s(t) + "\n";
  }
  r.json["t2"] = t2;
  r.json["ok"] = rep.ok;
  r.json["first_violation"] = rep.first_violation ? ordered_json(*rep.first_violation) : ordered_json(nullptr);
  if (!rep.ok) {
    r.violations.push_back({"t2-monotone", "t2 increases at n = " + l2s(*rep.first_violation)});
  }
  return r;
}

Result demo_poincare() {
  const auto rep = ledger::poincare_demo();
  Result r;
  r.json = envelope("demo poincare");
  r.json["steps"] = rep.steps;
  r.json["lens_dim"] = rep.lens_dim;
  r.json["conditional_value"] = rep.conditional_value;
  r.json["lower_bound"] = rep.lower_bound;
  r.json["contradiction"] = rep.contradiction;
  r.json["conclusion"] = rep.conclusion;
  for (const auto& s : rep.steps) r.text += s + "\n";
  r.text += "conclusion: " + rep.conclusion + "\n";
  r.csv = {{"key", "value"},
           {"lens_dim", l2s(rep.lens_dim)},
           {"conditional_value", l2s(rep.conditional_value)},
           {"lower_bound", l2s(rep.lower_bound)},
           {"contradiction", b2s(rep.contradiction)},
           {"conclusion", rep.conclusion}};
  return r;
}

std::string format_text(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Immersed-curve pairing engine and torsion ledger", "pegboard"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  std::string format = "text";
  std::string output;
  app.add_option("--format,-f", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "svg", "text"}))
      ->capture_default_str();
  app.add_option("--output,-o", output, "Write the artifact to this path");

  std::function<Result()> action;
  std::string knot, slope;
  std::vector<std::string> slopes, overlays, window;
  long pmax = 8, qmax = 4;

  auto* zoo_cmd = app.add_subcommand("zoo", "Knot zoo");
  zoo_cmd->require_subcommand(1);
  zoo_cmd->add_subcommand("list", "List zoo knots")->callback([&] { action = cmd_zoo_list; });

  auto* pair = app.add_subcommand("pair", "Surgery dimensions by line pairing");
  pair->add_option("knot", knot)->required();
  pair->add_option("slopes", slopes, "p/q or n")->required();
  pair->callback([&] { action = [&] { return cmd_pair(knot, slopes); }; });

  auto* hfk = app.add_subcommand("hfk", "Knot Floer dimensions of the dual knot (1/0 gives the knot itself)");
  hfk->add_option("knot", knot)->required();
  hfk->add_option("slope", slope)->required();
  hfk->callback([&] { action = [&] { return cmd_hfk(knot, slope); }; });

  auto* diff = app.add_subcommand("diff", "Phi/Psi ranks with census bounds and rank checks");
  diff->add_option("knot", knot)->required();
  diff->add_option("slope", slope)->required();
  diff->callback([&] { action = [&] { return cmd_diff(knot, slope); }; });

  auto* inv = app.add_subcommand("invariants", "Genus, tau, epsilon and extrema census");
  inv->add_option("knot", knot)->required();
  inv->callback([&] { action = [&] { return cmd_invariants(knot); }; });

  auto* scan = app.add_subcommand("scan-simple", "Dually Floer simple slopes in a grid");
  scan->add_option("knot", knot)->required();
  scan->add_option("--pmax", pmax)->capture_default_str();
  scan->add_option("--qmax", qmax)->capture_default_str();
  scan->callback([&] { action = [&] { return cmd_scan(knot, pmax, qmax); }; });

  auto* render = app.add_subcommand("render", "SVG peg-board picture");
  render->add_option("knot", knot)->required();
  render->add_option("--overlay", overlays, "p/q (line family) or p/q@h (one arc)");
  render->add_option("--window", window, "Vertical window lo hi")->expected(2);
  render->callback([&] {
    if (format == "text") format = "svg";
    action = [&] { return cmd_render(knot, overlays, window); };
  });

  auto* demo = app.add_subcommand("demo", "Worked demonstrations");
  demo->require_subcommand(1);
  demo->add_subcommand("poincare", "Adjunction failure over F2")->callback([&] { action = demo_poincare; });

  auto* led = app.add_subcommand("ledger", "Torsion ledger");
  led->require_subcommand(1);
  std::vector<long> nums;
  std::string shape_arg, file;
  bool minimal = false;

  auto numeric = [&](const char* name, const char* desc, std::size_t count, std::function<Result()> fn) {
    auto* c = led->add_subcommand(name, desc);
    c->add_option("values", nums)->expected(static_cast<int>(count))->required();
    c->callback([&, fn] { action = fn; });
    return c;
  };
  numeric("quasi-alt", "Khovanov-type groups of a quasi-alternating knot: <delta>", 1, [&] {
    const auto g = ledger::quasi_alt(nums[0]);
    Result r = ledger_result("quasi-alt");
    r.json["delta"] = nums[0];
    r.json["unreduced"] = g.unreduced();
    r.json["reduced"] = g.reduced();
    r.json["free_rank"] = g.free_rank;
    r.json["torsion_2"] = g.torsion_2;
    r.json["reduced_free_rank"] = g.reduced_free_rank;
    r.csv.push_back({"unreduced", g.unreduced()});
    r.csv.push_back({"reduced", g.reduced()});
    r.text = g.unreduced() + "\n";
    return r;
  });
  numeric("half-bound", "2-torsion bound at (2n-1)/2: <n> <k_n>", 2, [&] {
    Result r = ledger_result("half-bound");
    add_cert(r, ledger::torsion_bound_half(nums[0], nums[1]));
    return r;
  });
  numeric("dual-one", "Bounds for the dual knot of +1 surgery: <D_top> <dim>", 2, [&] {
    const auto b = ledger::dual_one_bounds(nums[0], nums[1]);
    Result r = ledger_result("dual-one");
    r.json["khi_lower"] = b.khi_lower;
    r.csv.push_back({"khi_lower", l2s(b.khi_lower)});
    r.text = "dual knot homology >= " + l2s(b.khi_lower) + "\n";
    add_cert(r, b.cert);
    return r;
  });
  numeric("genus-one", "Genus-one certificate: <a> <tau> <D_top>", 3, [&] {
    const auto g = ledger::genus_one_report(nums[0], nums[1], nums[2]);
    Result r = ledger_result("genus-one");
    r.json["khi_dims"] = g.khi_dims;
    r.json["isharp1_dim"] = g.isharp1_dim;
    r.json["isharp_upper"] = g.isharp_upper;
    r.csv.push_back({"isharp1_dim", l2s(g.isharp1_dim)});
    r.csv.push_back({"isharp_upper", l2s(g.isharp_upper)});
    r.text = "KHI dims " + l2s(g.khi_dims[0]) + "," + l2s(g.khi_dims[1]) + "," + l2s(g.khi_dims[2]) +
             "; dim at +1 surgery " + l2s(g.isharp1_dim) + "\n";
    add_cert(r, g.cert);
    return r;
  });
  numeric("unknotting-one", "Unknotting-number-one check: <dim KHI>", 1, [&] {
    const auto u = ledger::unknotting_one_check(nums[0]);
    Result r = ledger_result("unknotting-one");
    r.json["isharp_upper"] = u.isharp_upper;
    r.csv.push_back({"isharp_upper", l2s(u.isharp_upper)});
    r.text = "C-dimension upper bound " + l2s(u.isharp_upper) + "\n";
    add_cert(r, u.cert);
    return r;
  });
  numeric("half-dim", "C-dimension at (2n-1)/2: <n> <nu> <D_n>", 3, [&] {
    const long v = ledger::half_dim_C(nums[0], nums[1], nums[2]);
    Result r = ledger_result("half-dim");
    r.json["dim"] = v;
    r.csv.push_back({"dim", l2s(v)});
    r.text = l2s(v) + "\n";
    return r;
  });
  numeric("triangle", "Exact-triangle consistency: <a> <b> <c>", 3, [&] {
    const bool ok = ledger::triangle_check(nums[0], nums[1], nums[2]);
    Result r = ledger_result("triangle");
    r.json["ok"] = ok;
    r.csv.push_back({"ok", b2s(ok)});
    r.text = b2s(ok) + "\n";
    return r;
  });
  numeric("dgamma", "Dual-knot dimension sequence: <tau> <min> <lo> <hi>", 4, [&] {
    Result r = ledger_result("dgamma");
    sequence_out(r, ledger::dgamma_seq(nums[0], nums[1], nums[2], nums[3]));
    return r;
  });
  {
    auto* c = led->add_subcommand("dim-seq", "C-dimension sequence: <shape> <nu> <base> <lo> <hi>");
    c->add_option("shape", shape_arg)->required();
    c->add_option("values", nums)->expected(4)->required();
    c->callback([&] {
      action = [&] {
        Result r = ledger_result("dim-seq");
        sequence_out(r, ledger::dim_seq_C(parse_shape(shape_arg), nums[0], nums[1], nums[2], nums[3]));
        return r;
      };
    });
  }
  {
    auto* c = led->add_subcommand("no-torsion", "Consequences of no 2-torsion at n: <n> <shape> <nu> <tau>");
    c->add_option("n", pmax)->required();
    c->add_option("shape", shape_arg)->required();
    c->add_option("values", nums)->expected(2)->required();
    c->callback([&] {
      action = [&] {
        const auto v = ledger::no_torsion_consequence(pmax, parse_shape(shape_arg), nums[0], nums[1]);
        Result r = ledger_result("no-torsion");
        r.json["consistent"] = v.consistent;
        r.json["branch"] = v.branch;
        r.json["reason"] = v.reason;
        r.json["consequences"] = v.consequences;
        r.csv.push_back({"consistent", b2s(v.consistent)});
        r.csv.push_back({"branch", v.branch});
        r.text = std::string(v.consistent ? "consistent" : "contradiction") + " [" + v.branch + "]: " + v.reason + "\n";
        for (const auto& s : v.consequences) r.text += "  " + s + "\n";
        return r;
      };
    });
  }
  {
    auto* c = led->add_subcommand("propagate", "Slope region certified from a minimal integer slope: <n>");
    c->add_option("n", pmax)->required();
    c->add_flag("--minimal", minimal, "dims over F2 and C both equal n at slope n");
    c->callback([&] {
      action = [&] {
        const auto s = ledger::slope_propagation(pmax, minimal);
        Result r = ledger_result("propagate");
        r.json["certified"] = s.certified;
        r.json["lower"] = s.lower;
        r.json["statement"] = s.statement;
        r.csv.push_back({"certified", b2s(s.certified)});
        r.csv.push_back({"statement", s.statement});
        r.text = s.statement + "\n";
        return r;
      };
    });
  }
  {
    auto* c = led->add_subcommand("classify", "F2 shape classification of a sequence CSV");
    c->add_option("file", file)->required();
    c->callback([&] { action = [&] { return ledger_classify(file); }; });
  }
  {
    auto* c = led->add_subcommand("t2", "2-torsion monotonicity from C and F2 sequences in a CSV");
    c->add_option("file", file)->required();
    c->add_option("--nu", qmax, "nu of the knot")->required();
    c->callback([&] { action = [&] { return ledger_t2(file, qmax); }; });
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    for (const auto* sub : app.get_subcommands()) {
      err << sub->help();
      break;
    }
    return kUsage;
  }

  Result r;
  try {
    r = action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ConstraintViolation ? kTheoremViolation : kInvalid;
  }

  std::string body;
  if (r.svg) {
    if (format != "svg") {
      err << "usage error: render emits svg only\n";
      return kUsage;
    }
    body = *r.svg;
  } else if (format == "svg") {
    err << "usage error: svg output is available for render only\n";
    return kUsage;
  } else if (format == "json") {
    if (!r.violations.empty()) {
      ordered_json v = ordered_json::array();
      for (const auto& x : r.violations) v.push_back({{"id", x.id}, {"detail", x.detail}});
      r.json["violations"] = v;
    }
    body = format_text(r.json);
  } else if (format == "csv") {
    body = render_csv(r.csv);
  } else {
    body = r.text;
  }

  if (output.empty()) {
    out << body;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << output << "\n";
      return kInvalid;
    }
    f << body;
  }
  for (const auto& v : r.violations) err << "THEOREM VIOLATION: " << v.id << ": " << v.detail << "\n";
  return r.violations.empty() ? kOk : kTheoremViolation;
}

}  // namespace pegboard::cli
