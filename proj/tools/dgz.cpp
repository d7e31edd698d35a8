// dgz: exact construction and Galois-point certification for the
// Dickson-Guralnick-Zieve plane curves over F_2, F_3 and F_4.
//
// Subcommands:
//   build         construct the curve and emit it as an artifact
//   verify-facts  check the curve's structural facts mechanically
//   scan          decide the Galois property for every low-degree point
//   certify       decide the Galois property for one chosen point
//
// Exit codes: 0 on success (for certify: any definitive verdict),
// 1 on verification failure or an inconclusive certificate,
// 2 on usage errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dgz/curve.hpp"
#include "dgz/field.hpp"
#include "dgz/galois.hpp"
#include "dgz/io.hpp"
#include "dgz/plane.hpp"

namespace {

struct CommonArgs {
  std::uint32_t q = 0;
  std::uint32_t L = 12;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--q", args.q, "Base field size (2, 3 or 4)")->required();
  cmd->add_option("--L", args.L,
                  "Working extension degree over the base field");
  cmd->add_option("--format", args.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", args.out,
                  "Write the report to this file instead of stdout");
}

void emit(const CommonArgs& args, const std::string& text) {
  if (args.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream os(args.out, std::ios::binary);
  if (!os) {
    throw std::invalid_argument("cannot open output file: " + args.out);
  }
  os << text << "\n";
  if (!os) {
    throw std::invalid_argument("cannot write output file: " + args.out);
  }
}

// Grammar: three coordinates separated by commas; each coordinate lists
// digits low power first, separated by dots, on the power basis of the
// generator of F_{q^k} (k = --point-ext). Digit d in [0, q) stands for
// the d-th base-field element in enumeration order: 0, 1, g, g^2, ...
dgz::ProjPoint parse_point(const dgz::FieldCtx& F, const std::string& text,
                           std::uint32_t ext) {
  if (ext == 0 || F.L() % ext != 0) {
    throw std::invalid_argument(
        "--point-ext must be a positive divisor of L");
  }
  std::vector<std::string> coords;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      coords.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  coords.push_back(cur);
  if (coords.size() != 3) {
    throw std::invalid_argument(
        "--point needs exactly three comma-separated coordinates");
  }
  const std::vector<dgz::Fel> base = F.enumerate_subfield(1);
  const dgz::Fel gen = F.subfield_generator(ext);
  dgz::Fel parsed[3];
  for (int i = 0; i < 3; ++i) {
    std::vector<std::uint32_t> digits;
    std::string tok;
    auto flush = [&]() {
      if (tok.empty()) {
        throw std::invalid_argument("--point has an empty digit in \"" +
                                    coords[i] + "\"");
      }
      std::size_t used = 0;
      unsigned long value = std::stoul(tok, &used, 10);
      if (used != tok.size() || value >= F.q()) {
        throw std::invalid_argument("--point digit out of range: " + tok);
      }
      digits.push_back(static_cast<std::uint32_t>(value));
      tok.clear();
    };
    for (char ch : coords[i]) {
      if (ch == '.') {
        flush();
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        tok.push_back(ch);
      } else {
        throw std::invalid_argument(std::string("--point has a bad character: ") + ch);
      }
    }
    flush();
    if (digits.size() > ext) {
      throw std::invalid_argument(
          "--point coordinate has more digits than --point-ext allows");
    }
    dgz::Fel acc = F.zero();
    for (std::size_t j = 0; j < digits.size(); ++j) {
      acc = F.add(acc, F.mul(base[digits[j]],
                             F.pow(gen, static_cast<std::int64_t>(j))));
    }
    parsed[i] = acc;
  }
  return dgz::make_point(F, parsed[0], parsed[1], parsed[2]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact construction and Galois-point certification for the "
      "Dickson-Guralnick-Zieve plane curves"};
  app.require_subcommand(1);

  CommonArgs build_args;
  CLI::App* cmd_build =
      app.add_subcommand("build", "Construct the curve and emit it");
  add_common(cmd_build, build_args);

  CommonArgs facts_args;
  dgz::FactOptions fact_opts;
  CLI::App* cmd_facts = app.add_subcommand(
      "verify-facts", "Check the curve's structural facts mechanically");
  add_common(cmd_facts, facts_args);
  cmd_facts->add_option("--samples", fact_opts.samples_per_degree,
                        "Sampled points per extension degree");
  cmd_facts->add_option("--smooth-k-max", fact_opts.smooth_k_max,
                        "Largest extension swept for smooth-point tangents");
  cmd_facts->add_option("--seed", fact_opts.seed, "Sampling seed");

  CommonArgs scan_args;
  dgz::ScanOptions scan_opts;
  CLI::App* cmd_scan = app.add_subcommand(
      "scan", "Decide the Galois property for every low-degree point");
  add_common(cmd_scan, scan_args);
  std::uint64_t scan_seed = 42;
  cmd_scan->add_option("--samples", scan_opts.samples_per_degree,
                       "Sampled points per extension degree");
  cmd_scan->add_option("--seed", scan_seed, "Sampling seed");
  cmd_scan->add_option("--line-samples",
                       scan_opts.decide.negative.line_samples,
                       "Extra seeded lines per degree in the negative route");
  cmd_scan->add_option("--pencil-cap",
                       scan_opts.decide.negative.pencil_line_cap,
                       "Largest pencil size swept in the negative route");
  cmd_scan->add_option("--stab-ext-bound", scan_opts.decide.stab_ext_bound,
                       "Largest extension tried in the positive route");

  CommonArgs cert_args;
  dgz::DecideOptions cert_opts;
  std::string cert_point;
  std::uint32_t cert_ext = 1;
  CLI::App* cmd_cert = app.add_subcommand(
      "certify", "Decide the Galois property for one chosen point");
  add_common(cmd_cert, cert_args);
  cmd_cert
      ->add_option("--point", cert_point,
                   "Point to certify: three comma-separated coordinates, "
                   "each a dot-separated digit list on the power basis of "
                   "the F_{q^k} generator (k = --point-ext)")
      ->required();
  cmd_cert->add_option("--point-ext", cert_ext,
                       "Extension degree the coordinates are written in");
  cmd_cert->add_option("--seed", cert_opts.negative.seed, "Sampling seed");
  cmd_cert->add_option("--line-samples", cert_opts.negative.line_samples,
                       "Extra seeded lines per degree in the negative route");
  cmd_cert->add_option("--pencil-cap", cert_opts.negative.pencil_line_cap,
                       "Largest pencil size swept in the negative route");
  cmd_cert->add_option("--stab-ext-bound", cert_opts.stab_ext_bound,
                       "Largest extension tried in the positive route");

  try {
    app.parse(argc, argv);

    if (app.got_subcommand(cmd_build)) {
      dgz::Curve C = dgz::Curve::build(build_args.q, build_args.L);
      emit(build_args, build_args.format == "json" ? dgz::curve_json(C)
                                                   : dgz::curve_text(C));
      return 0;
    }

    if (app.got_subcommand(cmd_facts)) {
      dgz::Curve C = dgz::Curve::build(facts_args.q, facts_args.L);
      dgz::FactReport report = dgz::verify_facts(C, fact_opts);
      emit(facts_args, facts_args.format == "json"
                           ? dgz::facts_json(C, report, fact_opts)
                           : dgz::facts_text(C, report));
      return report.all_pass ? 0 : 1;
    }

    if (app.got_subcommand(cmd_scan)) {
      scan_opts.seed = scan_seed;
      scan_opts.decide.negative.seed = scan_seed;
      dgz::Curve C = dgz::Curve::build(scan_args.q, scan_args.L);
      dgz::ScanReport report = dgz::theorem_scan(C, scan_opts);
      emit(scan_args, scan_args.format == "json"
                          ? dgz::scan_json(C, report)
                          : dgz::scan_text(C, report));
      return report.pass ? 0 : 1;
    }

    if (app.got_subcommand(cmd_cert)) {
      dgz::Curve C = dgz::Curve::build(cert_args.q, cert_args.L);
      dgz::ProjPoint P = parse_point(C.ctx(), cert_point, cert_ext);
      dgz::Decision decision = dgz::decide(C, P, cert_opts);
      emit(cert_args, cert_args.format == "json"
                          ? dgz::decision_json(C, decision)
                          : dgz::decision_text(C, decision));
      return decision.verdict == dgz::Verdict::Inconclusive ? 1 : 0;
    }

    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const dgz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
