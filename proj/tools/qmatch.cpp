#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmatch/bmatching.hpp"
#include "qmatch/decompose.hpp"
#include "qmatch/errors.hpp"
#include "qmatch/inequality.hpp"
#include "qmatch/io.hpp"
#include "qmatch/matching.hpp"
#include "qmatch/point.hpp"
#include "qmatch/problem.hpp"
#include "qmatch/rational.hpp"
#include "qmatch/separate.hpp"
#include "qmatch/verify.hpp"

namespace {

using namespace qmatch;

// Double-description dimension guard; QMATCH_ENUM_GUARD raises it together
// with the library's matching-enumeration guard.
int dd_guard() {
  if (const char* env = std::getenv("QMATCH_ENUM_GUARD")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<int>(v);
  }
  return 12;
}

Variant variant_of(const std::string& token) {
  static const std::map<std::string, Variant> table = {
      {"exact", Variant::Exact},
      {"down", Variant::Down},
      {"up", Variant::Up},
      {"perfect-exact", Variant::PerfectExact},
      {"perfect-down", Variant::PerfectDown},
      {"perfect-up", Variant::PerfectUp}};
  return table.at(token);
}

QProblem plain_base(const ParsedProblem& pp, const std::string& command) {
  if (!pp.plain())
    throw InputError(command + " needs a plain instance (no b/cap lines)");
  return pp.base;
}

int cmd_separate(const std::string& problem_path, const std::string& point_path,
                 const std::string& variant) {
  const ParsedProblem pp = parse_problem_file(problem_path);
  const QProblem p = plain_base(pp, "separate");
  const QPoint pt = parse_point_file(point_path, p);
  std::optional<SeparationCertificate> cert;
  if (variant == "down") {
    cert = separate_down(p, pt);
  } else if (variant == "up") {
    cert = separate_up(p, pt);
  } else {
    cert = separate_exact(p, pt);
  }
  if (!cert.has_value()) {
    std::cout << "inside\n";
    return 0;
  }
  std::cout << cert->row.tag
            << " violation=" << to_fraction_string(cert->violation) << '\n';
  return 1;
}

int cmd_decompose(const std::string& problem_path,
                  const std::string& point_path, const std::string& lemma) {
  const ParsedProblem pp = parse_problem_file(problem_path);
  const QProblem p = plain_base(pp, "decompose");
  const QPoint pt = parse_point_file(point_path, p);
  const LemmaDecomposition dec = lemma == "down" ? lemma_down_decompose(p, pt)
                                                 : lemma_up_decompose(p, pt);

  // Re-verify every term and the combination before printing anything.
  const GeneralGraph host = p.graph();
  std::vector<Rational> sum(p.edge_count(), Rational(0));
  Rational ysum = 0, lambda_sum = 0;
  for (std::size_t j = 0; j < dec.terms.size(); ++j) {
    const LemmaTerm& term = dec.terms[j];
    const Rational& mult = dec.lambda[j];
    if (mult <= 0 || !is_matching(host, term.matching) ||
        term.y != y_of(p, term.matching)) {
      std::cerr << "error: term " << j << " failed re-verification\n";
      return 1;
    }
    for (int e : term.matching) sum[e] += mult;
    ysum += mult * term.y;
    lambda_sum += mult;
  }
  if (lambda_sum != 1 || sum != pt.x || ysum != pt.y) {
    std::cerr << "error: combination does not reproduce the input point\n";
    return 1;
  }

  for (std::size_t j = 0; j < dec.terms.size(); ++j) {
    std::cout << "mult " << to_fraction_string(dec.lambda[j]) << " ;";
    for (int e : dec.terms[j].matching) std::cout << ' ' << edge_name(p, e);
    std::cout << " ; y=" << dec.terms[j].y << '\n';
  }
  return 0;
}

// All description rows of the facet table, in description order.
std::vector<FamilyInstance> facet_rows(const QProblem& p) {
  std::vector<FamilyInstance> rows;
  for (int e = 0; e < p.edge_count(); ++e) rows.push_back(nonneg_instance(e));
  for (int v = 0; v < p.node_count(); ++v) rows.push_back(degree_instance(v));
  rows.push_back({FamilyKind::YLower, -1, {}, {}});
  rows.push_back({FamilyKind::YUpper, -1, {}, {}});
  rows.push_back(stdlin_instance(1));
  rows.push_back(stdlin_instance(2));
  for (const FamilyInstance& inst :
       enumerate_family(p, Family::DownFacets, p.node_count()))
    rows.push_back(inst);
  for (const FamilyInstance& inst :
       enumerate_family(p, Family::UpFacets, p.node_count()))
    rows.push_back(inst);
  return rows;
}

int cmd_verify(const std::string& problem_path, const std::string& variant_token,
               bool facets, bool completeness, bool bmatching, int max_f) {
  const ParsedProblem pp = parse_problem_file(problem_path);
  const Variant variant = variant_of(variant_token);
  int failed_sections = 0;

  {
    const ValidityReport rep = check_validity(pp.base, variant);
    if (rep.ok()) {
      std::cout << "validity " << variant_token << ": pass (vertices="
                << rep.vertex_count << " rows=" << rep.row_count << ")\n";
    } else {
      ++failed_sections;
      std::cout << "validity " << variant_token << ": FAIL ("
                << rep.violations.size() << " violations)\n";
      for (const std::string& line : rep.violations)
        std::cout << "  " << line << '\n';
    }
  }

  if (facets) {
    int mismatches = 0;
    const std::vector<FamilyInstance> rows = facet_rows(pp.base);
    for (const FamilyInstance& inst : rows) {
      const LinearInequality row = build(pp.base, inst);
      const std::optional<bool> want = expected_facet(pp.base, inst, variant);
      const FacetCheck fc = check_facet(pp.base, inst, variant);
      const bool match =
          want.has_value() ? fc.valid && fc.facet == *want : !fc.valid;
      std::cout << "facet " << row.tag << ": "
                << (!fc.valid   ? "invalid"
                    : fc.facet  ? "facet"
                                : "not_facet");
      if (!match) {
        ++mismatches;
        std::cout << " MISMATCH (expected "
                  << (!want.has_value() ? "invalid"
                      : *want           ? "facet"
                                        : "not_facet")
                  << ")";
      }
      std::cout << '\n';
    }
    if (mismatches == 0) {
      std::cout << "facets " << variant_token << ": pass (rows=" << rows.size()
                << ")\n";
    } else {
      ++failed_sections;
      std::cout << "facets " << variant_token << ": FAIL (mismatches="
                << mismatches << ")\n";
    }
  }

  if (completeness) {
    const CompletenessReport rep =
        check_completeness(pp.base, variant, dd_guard());
    if (rep.ok()) {
      std::cout << "completeness " << variant_token << ": pass (vertices="
                << rep.expected_count << " description=" << rep.description_count
                << ")\n";
    } else {
      ++failed_sections;
      std::cout << "completeness " << variant_token << ": FAIL (missing="
                << rep.missing.size() << " extra=" << rep.extra.size() << ")\n";
      for (const QPoint& pt : rep.missing)
        std::cout << "  missing " << point_string(pt) << '\n';
      for (const QPoint& pt : rep.extra)
        std::cout << "  extra " << point_string(pt) << '\n';
    }
  }

  if (bmatching) {
    BVerifyOptions opts;
    opts.max_f = max_f;
    const BVerifyReport rep = verify_bmatching_description(pp.bmatching(), opts);
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    if (rep.ok()) {
      std::cout << "bmatching: pass (integer-points=" << rep.integer_points
                << " vertices=" << rep.vertex_count << ")\n";
    } else {
      ++failed_sections;
      std::cout << "bmatching: FAIL (valid=" << yn(rep.valid)
                << " complete=" << yn(rep.complete)
                << " side-valid=" << yn(rep.side_rows_valid)
                << " side-redundant=" << yn(rep.side_rows_redundant)
                << " side-facets=" << yn(rep.side_rows_no_new_facets)
                << " parity=" << yn(rep.parity_redundancy)
                << " pair-bound=" << yn(rep.pair_bound_valid) << ")\n";
      for (const std::string& line : rep.validity_failures)
        std::cout << "  " << line << '\n';
      for (const BPoint& bp : rep.missing)
        std::cout << "  missing " << point_string(QPoint{bp.x, bp.y}) << '\n';
      for (const BPoint& bp : rep.extra)
        std::cout << "  extra " << point_string(QPoint{bp.x, bp.y}) << '\n';
    }
  }

  return failed_sections == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact separation, decomposition and verification for "
               "one-quadratic-term matching polytopes"};
  app.require_subcommand(1);

  std::string problem_path, point_path;
  std::string variant = "exact", lemma;
  bool facets = false, completeness = false, bmatching = false;
  int max_f = -1;

  CLI::App* sep =
      app.add_subcommand("separate", "find a violated row or report inside");
  sep->add_option("problem", problem_path, "problem file")->required();
  sep->add_option("point", point_path, "point file")->required();
  sep->add_option("--variant", variant, "polytope to separate against")
      ->check(CLI::IsMember({"down", "up", "exact"}))
      ->capture_default_str();

  CLI::App* dec = app.add_subcommand(
      "decompose", "write a tight point as a convex combination of vertices");
  dec->add_option("problem", problem_path, "problem file")->required();
  dec->add_option("point", point_path, "point file")->required();
  dec->add_option("--lemma", lemma, "which combination lemma to apply")
      ->required()
      ->check(CLI::IsMember({"down", "up"}));

  CLI::App* ver =
      app.add_subcommand("verify", "machine-check the polytope descriptions");
  ver->add_option("problem", problem_path, "problem file")->required();
  ver->add_option("--variant", variant, "which polytope to check")
      ->check(CLI::IsMember({"exact", "down", "up", "perfect-exact",
                             "perfect-down", "perfect-up"}))
      ->capture_default_str();
  ver->add_flag("--facets", facets, "compare every row to the facet table");
  ver->add_flag("--completeness", completeness,
                "vertex-enumerate the description");
  ver->add_flag("--bmatching", bmatching,
                "check the degree-bounded description");
  ver->add_option("--max-f", max_f,
                  "cap |F| in capacitated rows (-1 = enumerate all)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sep->parsed()) return cmd_separate(problem_path, point_path, variant);
    if (dec->parsed()) return cmd_decompose(problem_path, point_path, lemma);
    return cmd_verify(problem_path, variant, facets, completeness, bmatching,
                      max_f);
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const GuardError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 3;
  } catch (const HypothesisError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
}
