#include "dgz/io.hpp"

#include <sstream>

#include "json.hpp"

namespace dgz {

namespace {

using json = nlohmann::ordered_json;

json fel_json(const FieldCtx& F, Fel a) {
  auto digits = F.to_coeffs(a);
  while (!digits.empty() && digits.back() == 0) digits.pop_back();
  return json(digits);
}

json triple_json(const FieldCtx& F, const std::array<Fel, 3>& c) {
  return json::array({fel_json(F, c[0]), fel_json(F, c[1]), fel_json(F, c[2])});
}

json point_json(const FieldCtx& F, const ProjPoint& P) {
  json j;
  j["coords"] = triple_json(F, P.c);
  j["def_degree"] = P.def_degree;
  return j;
}

json line_json(const FieldCtx& F, const ProjLine& l) {
  json j;
  j["dual"] = triple_json(F, l.u);
  j["def_degree"] = l.def_degree;
  return j;
}

json matrix_json(const FieldCtx& F, const Mat3& M) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back(fel_json(F, M[i][j]));
    rows.push_back(std::move(row));
  }
  return rows;
}

json field_json(const FieldCtx& F) {
  json j;
  j["p"] = F.p();
  j["m"] = F.m();
  j["L"] = F.L();
  j["q"] = F.q();
  j["modulus"] = F.modulus();
  return j;
}

json header_json(const Curve& C, const char* kind) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["field"] = field_json(C.ctx());
  j["q"] = C.q();
  j["degree"] = C.degree();
  return j;
}

json profile_json(const FieldCtx& F, const FiberProfile& fp) {
  json j;
  if (fp.algebraic) {
    j["line"] = nullptr;
    json a;
    a["frame"] = matrix_json(F, fp.algebraic->frame);
    json mod = json::array();
    for (Fel c : fp.algebraic->modulus) mod.push_back(fel_json(F, c));
    a["modulus"] = std::move(mod);
    a["param_degree"] = fp.algebraic->param_degree;
    j["algebraic"] = std::move(a);
  } else {
    j["line"] = line_json(F, fp.line);
    j["algebraic"] = nullptr;
  }
  j["center_order"] = fp.center_order;
  j["center_multiplicity"] = fp.center_multiplicity;
  if (fp.center_index)
    j["center_index"] = *fp.center_index;
  else
    j["center_index"] = nullptr;
  json entries = json::array();
  for (const auto& [e, cnt] : fp.entries)
    entries.push_back(json::array({e, cnt}));
  j["entries"] = std::move(entries);
  j["deg_pi"] = fp.deg_pi;
  return j;
}

json negative_json(const FieldCtx& F, const NegativeCertificate& cert) {
  json j;
  j["point"] = point_json(F, cert.point);
  j["deg_pi"] = cert.deg_pi;
  j["lines_scanned"] = cert.lines_scanned;
  j["found"] = cert.found;
  j["unibranch_assumption"] = cert.unibranch_assumption;
  if (cert.witness) {
    json w;
    w["reason"] = cert.witness->reason;
    if (cert.witness->reason == "index-not-divisor")
      w["bad_index"] = cert.witness->bad_index;
    w["profile"] = profile_json(F, cert.witness->profile);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json positive_json(const FieldCtx& F, const PositiveCertificate& cert) {
  json j;
  j["center"] = point_json(F, cert.center);
  j["ext_degree"] = cert.ext_degree;
  j["deg_pi"] = cert.deg_pi;
  j["candidate_count"] = cert.candidate_count;
  j["preservers"] = cert.preservers;
  j["closed"] = cert.closed;
  j["symbolic_ok"] = cert.symbolic_ok;
  j["pass"] = cert.pass;
  json gens = json::array();
  for (const PglElt& A : cert.generators) gens.push_back(matrix_json(F, A.M));
  j["generators"] = std::move(gens);
  return j;
}

json decision_json_obj(const Curve& C, const Decision& dec) {
  const FieldCtx& F = C.ctx();
  json j;
  j["verdict"] = verdict_name(dec.verdict);
  j["negative"] = negative_json(F, dec.negative);
  if (dec.positive)
    j["positive"] = positive_json(F, *dec.positive);
  else
    j["positive"] = nullptr;
  return j;
}

std::string point_str(const FieldCtx& F, const ProjPoint& P) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < 3; ++i) {
    if (i) os << " : ";
    auto digits = F.to_coeffs(P.c[i]);
    while (!digits.empty() && digits.back() == 0) digits.pop_back();
    if (digits.empty()) {
      os << "0";
    } else {
      for (std::size_t t = 0; t < digits.size(); ++t) {
        if (t) os << ".";
        os << digits[t];
      }
    }
  }
  os << ")";
  return os.str();
}

}  // namespace

std::string curve_json(const Curve& C) {
  json j = header_json(C, "curve");
  j["term_count"] = C.f().term_count();
  json terms = json::array();
  for (const auto& [m, c] : C.f().terms())
    terms.push_back(json::array({m.a, m.b, m.c, fel_json(C.ctx(), c)}));
  j["terms"] = std::move(terms);
  return j.dump(2) + "\n";
}

Curve curve_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("curve artifact is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
      throw Error("curve artifact has an unsupported schema_version");
    if (j.at("kind").get<std::string>() != "curve")
      throw Error("artifact kind is not 'curve'");
    std::uint32_t q = j.at("q").get<std::uint32_t>();
    std::uint32_t L = j.at("field").at("L").get<std::uint32_t>();
    Curve C = Curve::build(q, L);
    if (j.at("field").at("modulus").get<std::vector<std::uint32_t>>() !=
        C.ctx().modulus())
      throw Error("curve artifact modulus does not match the reconstruction");
    json expect = json::parse(curve_json(C));
    if (j.at("terms") != expect.at("terms"))
      throw Error("curve artifact terms do not match the reconstruction");
    return C;
  } catch (const json::exception& e) {
    throw Error(std::string("curve artifact is malformed: ") + e.what());
  }
}

std::string curve_text(const Curve& C) {
  const FieldCtx& F = C.ctx();
  std::ostringstream os;
  os << "curve over F_" << C.q() << ": degree " << C.degree() << ", "
     << C.f().term_count() << " terms, working field of order " << F.p()
     << "^" << F.deg() << "\n";
  return os.str();
}

std::string facts_json(const Curve& C, const FactReport& report,
                       const FactOptions& opts) {
  json j = header_json(C, "fact-report");
  json o;
  o["samples_per_degree"] = opts.samples_per_degree;
  o["sample_ext_min"] = opts.sample_ext_min;
  o["sample_ext_max"] = opts.sample_ext_max;
  o["smooth_k_max"] = opts.smooth_k_max;
  o["seed"] = opts.seed;
  j["options"] = std::move(o);
  json checks = json::array();
  for (const FactCheck& c : report.checks) {
    json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["skipped"] = c.skipped;
    cj["scanned"] = c.scanned;
    cj["violations"] = c.violations;
    cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["all_pass"] = report.all_pass;
  return j.dump(2) + "\n";
}

std::string facts_text(const Curve& C, const FactReport& report) {
  std::ostringstream os;
  os << curve_text(C);
  for (const FactCheck& c : report.checks) {
    os << (c.skipped ? "[SKIP]" : c.pass ? "[PASS]" : "[FAIL]") << " "
       << c.name << " (scanned=" << c.scanned
       << ", violations=" << c.violations << ")";
    if (!c.note.empty()) os << " — " << c.note;
    os << "\n";
  }
  os << (report.all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
  return os.str();
}

namespace {

json scan_options_json(const ScanOptions& o) {
  json j;
  j["samples_per_degree"] = o.samples_per_degree;
  j["sample_ext_min"] = o.sample_ext_min;
  j["sample_ext_max"] = o.sample_ext_max;
  j["seed"] = o.seed;
  j["stab_ext_bound"] = o.decide.stab_ext_bound;
  j["pencil_line_cap"] = o.decide.negative.pencil_line_cap;
  j["line_samples"] = o.decide.negative.line_samples;
  j["line_sample_ext_min"] = o.decide.negative.sample_ext_min;
  j["line_sample_ext_max"] = o.decide.negative.sample_ext_max;
  j["line_seed"] = o.decide.negative.seed;
  return j;
}

}  // namespace

std::string scan_json(const Curve& C, const ScanReport& report) {
  const FieldCtx& F = C.ctx();
  json j = header_json(C, "scan-report");
  j["options"] = scan_options_json(report.options);
  json totals;
  totals["scanned"] = report.scanned;
  totals["galois"] = report.galois;
  totals["not_galois"] = report.not_galois;
  totals["inconclusive"] = report.inconclusive;
  totals["expected_galois"] = report.expected_galois;
  j["totals"] = std::move(totals);
  j["pass"] = report.pass;
  bool unibranch = false;
  for (const ScanRow& row : report.rows)
    unibranch = unibranch || row.decision.negative.unibranch_assumption;
  j["unibranch_assumption_used"] = unibranch;
  json rows = json::array();
  for (const ScanRow& row : report.rows) {
    json r;
    r["point"] = point_json(F, row.point);
    r["def_degree"] = row.def_degree;
    r["sampled"] = row.sampled;
    r["verdict"] = verdict_name(row.decision.verdict);
    r["negative"] = negative_json(F, row.decision.negative);
    if (row.decision.positive)
      r["positive"] = positive_json(F, *row.decision.positive);
    else
      r["positive"] = nullptr;
    rows.push_back(std::move(r));
  }
  j["results"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string scan_text(const Curve& C, const ScanReport& report) {
  const FieldCtx& F = C.ctx();
  std::ostringstream os;
  os << curve_text(C);
  os << "scanned " << report.scanned << " points: " << report.galois
     << " galois, " << report.not_galois << " not galois, "
     << report.inconclusive << " inconclusive (expected galois: "
     << report.expected_galois << ")\n";
  for (const ScanRow& row : report.rows) {
    if (row.decision.verdict == Verdict::Galois) {
      os << "  galois " << point_str(F, row.point);
      if (row.decision.positive)
        os << "  [deck group of order " << row.decision.positive->preservers
           << ", ext degree " << row.decision.positive->ext_degree << "]";
      os << "\n";
    }
  }
  std::uint64_t shown = 0;
  for (const ScanRow& row : report.rows) {
    if (row.decision.verdict != Verdict::Inconclusive) continue;
    if (shown++ < 20)
      os << "  INCONCLUSIVE " << point_str(F, row.point) << " (def degree "
         << row.def_degree << ")\n";
  }
  if (shown > 20) os << "  ... and " << (shown - 20) << " more\n";
  os << (report.pass ? "scan PASSED" : "scan FAILED") << "\n";
  return os.str();
}

std::string decision_json(const Curve& C, const Decision& decision) {
  json j = header_json(C, "certificate");
  j["point"] = point_json(C.ctx(), decision.negative.point);
  j["decision"] = decision_json_obj(C, decision);
  return j.dump(2) + "\n";
}

std::string decision_text(const Curve& C, const Decision& dec) {
  const FieldCtx& F = C.ctx();
  std::ostringstream os;
  os << curve_text(C);
  os << "point " << point_str(F, dec.negative.point) << " (def degree "
     << dec.negative.point.def_degree << "): " << verdict_name(dec.verdict)
     << "\n";
  os << "  projection degree " << dec.negative.deg_pi << ", "
     << dec.negative.lines_scanned << " fibers inspected\n";
  if (dec.negative.witness) {
    const Obstruction& obs = *dec.negative.witness;
    os << "  obstruction: " << obs.reason;
    if (obs.reason == "index-not-divisor")
      os << " (index " << obs.bad_index << " does not divide "
         << obs.profile.deg_pi << ")";
    if (obs.profile.algebraic)
      os << "\n  fiber class: pencil parameters cut out by a degree-"
         << obs.profile.algebraic->param_degree << " modulus";
    os << "\n  fiber indices:";
    for (const auto& [e, cnt] : obs.profile.entries)
      os << " " << e << "x" << cnt;
    if (obs.profile.center_index)
      os << " center:" << *obs.profile.center_index;
    os << "\n";
    if (dec.negative.unibranch_assumption)
      os << "  (multiple points of the curve on this fiber are read as "
            "single places)\n";
  }
  if (dec.positive) {
    const PositiveCertificate& pos = *dec.positive;
    os << "  deck transformations: " << pos.preservers << "/" << pos.deg_pi
       << " from " << pos.candidate_count << " candidates (ext degree "
       << pos.ext_degree << "), closed=" << (pos.closed ? "yes" : "no")
       << ", recheck=" << (pos.symbolic_ok ? "ok" : "failed") << ", "
       << pos.generators.size() << " generators\n";
  }
  return os.str();
}

}  // namespace dgz
