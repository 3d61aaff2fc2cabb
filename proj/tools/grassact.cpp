// grassact: exact homology of representation varieties of free groups.
//
// Subcommands:
//   poincare     Poincare polynomial of G^r
//   act          apply a letter word or a generator-image substitution to a class
//   matrix       representation matrix in one degree or over all monomials
//   verify       property suites: paths, ia, faithful, rank-invariance, all
//   groups list  the group catalog
//
// Exit codes: 0 success, 1 verification failure, 2 parse/validation error,
// 3 semantic error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "grassact/errors.hpp"
#include "grassact/exact.hpp"
#include "grassact/free_group.hpp"
#include "grassact/grassmann.hpp"
#include "grassact/group_catalog.hpp"
#include "grassact/io_json.hpp"
#include "grassact/rep_action.hpp"
#include "grassact/verify.hpp"

namespace {

using namespace grassact;

bool use_json(const std::string& format) {
  if (format == "json") return true;
  if (format == "text") return false;
  throw ParseError("unknown output format '" + format + "' (expected text or json)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A --tuple argument is inline JSON when it starts with '{', otherwise a
/// path to a JSON file.
AutMap load_autmap(const std::string& arg) {
  std::string text = arg;
  std::size_t p = 0;
  while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  if (p >= text.size() || text[p] != '{') text = read_file(arg);
  return autmap_from_json(parse_json_text(text, "substitution"));
}

Context make_context(const std::string& group, int r) {
  return Context(parse_group_spec(group).degrees(), r);
}

/// Splits a comma-separated group list, ignoring commas inside deg[...].
std::vector<std::string> split_group_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct ActionSource {
  std::string word;
  std::string tuple;
  bool has_word = false;
  bool has_tuple = false;
};

void print_report_text(const VerifyReport& report) {
  for (const auto& c : report.checks) {
    std::cout << (c.passed ? "PASS" : "FAIL") << " " << c.name << ": " << c.detail
              << " (instances=" << c.instances << ")\n";
    if (!c.counterexample_word.empty())
      std::cout << "  counterexample word: " << c.counterexample_word << "\n";
    if (!c.counterexample_class.empty())
      std::cout << "  counterexample class: " << c.counterexample_class << "\n";
  }
  std::cout << (report.passed ? "all checks passed" : "verification FAILED") << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"exact Aut(F_r) action on the rational homology of G^r"};
  app.require_subcommand(1);

  std::string default_format = "text";
  if (const char* env = std::getenv("GRASSACT_FORMAT")) default_format = env;

  int exit_code = 0;

  // poincare ---------------------------------------------------------------
  auto* pc = app.add_subcommand("poincare", "Poincare polynomial of G^r");
  std::string pc_group;
  int pc_r = 1;
  std::string pc_format = default_format;
  pc->add_option("--group", pc_group, "group spec, e.g. A2xA1 or deg[3,5,7]")->required();
  pc->add_option("-r,--copies", pc_r, "number of copies of G")->required();
  pc->add_option("--format", pc_format, "output format: text or json");
  pc->callback([&] {
    const GroupSpec spec = parse_group_spec(pc_group);
    const auto coeffs = poincare_coefficients<BigInt>(spec, pc_r);
    if (use_json(pc_format)) {
      nlohmann::json jc = nlohmann::json::array();
      for (const auto& c : coeffs) jc.push_back(json_of_bigint(c));
      nlohmann::json out = {{"schema", 1},
                            {"group", spec.to_string()},
                            {"r", pc_r},
                            {"degrees", spec.degrees()},
                            {"coefficients", std::move(jc)},
                            {"polynomial", format_polynomial(coeffs)}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << format_polynomial(coeffs) << "\n";
      std::cout << "coefficients:";
      for (const auto& c : coeffs) std::cout << " " << c;
      std::cout << "\n";
    }
  });

  // act ---------------------------------------------------------------------
  auto* act = app.add_subcommand("act", "apply an automorphism to a homology class");
  std::string act_group, act_class, act_format = default_format;
  ActionSource act_src;
  int act_r = 1;
  act->add_option("--group", act_group, "group spec")->required();
  act->add_option("-r,--copies", act_r, "number of copies of G")->required();
  auto* act_word_opt =
      act->add_option("--word", act_src.word,
                      "letter word, e.g. \"R(1,3) s(1,2) v(2)\" (empty = identity)");
  auto* act_tuple_opt = act->add_option(
      "--tuple", act_src.tuple, "generator-image substitution: inline JSON or a file path");
  act_word_opt->excludes(act_tuple_opt);
  act->add_option("--class", act_class, "homology class in the text grammar")->required();
  act->add_option("--format", act_format, "output format: text or json");
  act->callback([&] {
    act_src.has_word = act_word_opt->count() > 0;
    act_src.has_tuple = act_tuple_opt->count() > 0;
    if (!act_src.has_word && !act_src.has_tuple)
      throw ParseError("act needs --word or --tuple");
    const Context ctx = make_context(act_group, act_r);
    const auto x = parse_class(act_class, ctx);
    HomologyClass<BigInt> result = x;
    if (act_src.has_word) {
      result = act_via_word(parse_generator_word(act_src.word, ctx.r()), x);
    } else {
      result = act_via_abelianization(load_autmap(act_src.tuple), x);
    }
    if (use_json(act_format)) {
      nlohmann::json out = {{"schema", 1},
                            {"context", context_to_json(ctx)},
                            {"class", format_class(result)}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << format_class(result) << "\n";
    }
  });

  // matrix -------------------------------------------------------------------
  auto* mx = app.add_subcommand("matrix", "representation matrix over a monomial basis");
  std::string mx_group, mx_format = default_format;
  ActionSource mx_src;
  int mx_r = 1;
  int mx_degree = 0;
  bool mx_full = false;
  mx->add_option("--group", mx_group, "group spec")->required();
  mx->add_option("-r,--copies", mx_r, "number of copies of G")->required();
  auto* mx_word_opt = mx->add_option("--word", mx_src.word, "letter word");
  auto* mx_tuple_opt =
      mx->add_option("--tuple", mx_src.tuple, "substitution: inline JSON or a file path");
  mx_word_opt->excludes(mx_tuple_opt);
  auto* mx_deg_opt = mx->add_option("--degree", mx_degree, "homology degree of the block");
  auto* mx_full_opt =
      mx->add_flag("--full", mx_full, "matrix over all 2^(n r) monomials in bit-set order");
  mx_deg_opt->excludes(mx_full_opt);
  mx->add_option("--format", mx_format, "output format: text or json");
  mx->callback([&] {
    mx_src.has_word = mx_word_opt->count() > 0;
    mx_src.has_tuple = mx_tuple_opt->count() > 0;
    if (!mx_src.has_word && !mx_src.has_tuple)
      throw ParseError("matrix needs --word or --tuple");
    if (!mx_full && mx_deg_opt->count() == 0)
      throw ParseError("matrix needs --degree <d> or --full");
    const Context ctx = make_context(mx_group, mx_r);
    RepMatrix<BigInt> m{ctx, 0, {}, {}};
    if (mx_src.has_word) {
      const auto w = parse_generator_word(mx_src.word, ctx.r());
      m = mx_full ? full_matrix<BigInt>(w, ctx) : representation_matrix<BigInt>(w, mx_degree, ctx);
    } else {
      const auto f = load_autmap(mx_src.tuple);
      m = mx_full ? full_matrix<BigInt>(f, ctx) : representation_matrix<BigInt>(f, mx_degree, ctx);
    }
    if (use_json(mx_format)) {
      std::cout << matrix_to_json(m).dump(2) << "\n";
    } else {
      std::cout << "degree: " << (m.is_full() ? std::string("full") : std::to_string(m.degree))
                << "\n";
      std::cout << "basis:";
      for (const auto& b : m.basis) std::cout << " [" << format_monomial(b, ctx) << "]";
      std::cout << "\n";
      for (Eigen::Index row = 0; row < m.matrix.rows(); ++row) {
        for (Eigen::Index col = 0; col < m.matrix.cols(); ++col)
          std::cout << (col ? " " : "") << m.matrix(row, col);
        std::cout << "\n";
      }
    }
  });

  // verify --------------------------------------------------------------------
  auto* vf = app.add_subcommand("verify", "run the theorem verification suites");
  std::string vf_suite = "all", vf_group, vf_groups, vf_format = default_format;
  int vf_r = 1;
  VerifyOptions vf_opts;
  vf->add_option("--suite", vf_suite, "paths, ia, faithful, rank-invariance or all");
  auto* vf_group_opt = vf->add_option("--group", vf_group, "group spec");
  auto* vf_groups_opt = vf->add_option(
      "--groups", vf_groups,
      "comma-separated group specs sharing one rank (rank-invariance partners)");
  vf_group_opt->excludes(vf_groups_opt);
  vf->add_option("-r,--copies", vf_r, "number of copies of G")->required();
  vf->add_option("--trials", vf_opts.trials, "random words per check");
  vf->add_option("--seed", vf_opts.seed, "random seed");
  vf->add_option("--max-word-len", vf_opts.max_word_len, "maximum letters per random word");
  vf->add_option("--format", vf_format, "output format: text or json");
  vf->callback([&] {
    const Suite suite = parse_suite(vf_suite);
    std::string base_group = vf_group;
    std::vector<std::vector<int>> partners;
    if (vf_groups_opt->count() > 0) {
      const auto specs = split_group_list(vf_groups);
      base_group = specs.at(0);
      for (std::size_t i = 1; i < specs.size(); ++i)
        partners.push_back(parse_group_spec(specs[i]).degrees());
    }
    if (base_group.empty()) throw ParseError("verify needs --group or --groups");
    const Context ctx = make_context(base_group, vf_r);
    if (partners.empty()) partners = default_rank_invariance_partners(ctx);

    VerifyReport report;
    const bool all = suite == Suite::All;
    if (all || suite == Suite::Paths) report.checks.push_back(check_paths(ctx, vf_opts));
    if (all || suite == Suite::Ia) report.checks.push_back(check_ia(ctx, vf_opts));
    if (all || suite == Suite::Faithful) report.checks.push_back(check_faithful(ctx, vf_opts));
    if (all || suite == Suite::RankInvariance)
      report.checks.push_back(check_rank_invariance(ctx, partners, vf_opts));
    for (const auto& c : report.checks) report.passed = report.passed && c.passed;

    if (use_json(vf_format)) {
      std::cout << report_to_json(report).dump(2) << "\n";
    } else {
      print_report_text(report);
    }
    if (!report.passed) exit_code = 1;
  });

  // groups list -----------------------------------------------------------------
  auto* groups = app.add_subcommand("groups", "group catalog queries");
  groups->require_subcommand(1);
  auto* glist = groups->add_subcommand("list", "list the catalog families");
  std::string gl_format = default_format;
  glist->add_option("--format", gl_format, "output format: text or json");
  glist->callback([&] {
    struct Row {
      std::string token, ranks, degrees, dimension, names;
    };
    const std::vector<Row> rows = {
        {"A<n>", "n >= 1", "3, 5, ..., 2n+1", "n(n+2)", "SU(n+1)"},
        {"B<n>", "n >= 2", "3, 7, ..., 4n-1", "n(2n+1)", "SO(2n+1), Spin(2n+1)"},
        {"C<n>", "n >= 2", "3, 7, ..., 4n-1", "n(2n+1)", "Sp(n)"},
        {"D<n>", "n >= 3", "3, 7, ..., 4n-5, 2n-1", "n(2n-1)", "SO(2n), Spin(2n)"},
        {"G2", "fixed", "3, 11", "14", ""},
        {"F4", "fixed", "3, 11, 15, 23", "52", ""},
        {"E6", "fixed", "3, 9, 11, 15, 17, 23", "78", ""},
        {"E7", "fixed", "3, 11, 15, 19, 23, 27, 35", "133", ""},
        {"E8", "fixed", "3, 15, 23, 27, 35, 39, 47, 59", "248", ""},
    };
    if (use_json(gl_format)) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& r : rows)
        out.push_back({{"family", r.token},
                       {"ranks", r.ranks},
                       {"degrees", r.degrees},
                       {"dimension", r.dimension},
                       {"classical_names", r.names}});
      std::cout << nlohmann::json{{"schema", 1}, {"families", std::move(out)}}.dump(2) << "\n";
    } else {
      std::cout << "family  ranks    degrees                      dim       classical names\n";
      for (const auto& r : rows) {
        std::cout << r.token;
        for (std::size_t i = r.token.size(); i < 8; ++i) std::cout << ' ';
        std::cout << r.ranks;
        for (std::size_t i = r.ranks.size(); i < 9; ++i) std::cout << ' ';
        std::cout << r.degrees;
        for (std::size_t i = r.degrees.size(); i < 29; ++i) std::cout << ' ';
        std::cout << r.dimension;
        for (std::size_t i = r.dimension.size(); i < 10; ++i) std::cout << ' ';
        std::cout << r.names << "\n";
      }
      std::cout << "explicit form: deg[d1,d2,...] with each d odd and >= 3\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const grassact::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const grassact::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const grassact::SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
