// borelcheck: verification campaigns and generator export.
//
//   borelcheck [--n N]... [--p P]... [--algebra g|b|both] [--check NAME]...
//              [--degree-cap D] [--config FILE] [--out FILE] [--format json|text]
//   borelcheck export --kind KIND [--k K] [--l L] [--i I] [--j J] --n N [--p P] [--ring S|U]
//
// Exit status: 0 when nothing failed, 1 when some check failed, 2 on usage errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "borel/campaign.hpp"
#include "borel/errors.hpp"

namespace {

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "borelcheck: cannot open " << path << " for writing\n";
    return 2;
  }
  out << text;
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw borel::UsageError("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification campaigns for the invariant theory of Borel subalgebras"};
  app.set_version_flag("--version", "borelcheck 0.1.0");

  std::vector<int> ns;
  std::vector<unsigned> ps;
  std::string algebra;
  std::vector<std::string> checks;
  int degree_cap = -1;
  std::size_t guard = 0;
  unsigned threads = 0;
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  app.add_option("--n", ns, "matrix size (repeatable)");
  app.add_option("--p", ps, "characteristic, 0 or a prime (repeatable)");
  app.add_option("--algebra", algebra, "g, b or both");
  app.add_option("--check", checks, "check to run (repeatable)");
  app.add_option("--degree-cap", degree_cap, "largest degree for the oracle sweeps");
  app.add_option("--scale-guard", guard, "monomial budget per solve (default BOREL_SCALE_GUARD or 50000)");
  app.add_option("--threads", threads, "worker threads, 0 for one per core");
  app.add_option("--config", config_path, "JSON config; flags override its fields");
  app.add_option("--out", out_path, "report file (default stdout)");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* exp = app.add_subcommand("export", "print one generator as JSON");
  std::string kind;
  borel::GeneratorId id;
  int exp_n = 0;
  unsigned exp_p = 0;
  std::string ring = "S";
  exp->add_option("--kind", kind, "c0, C, D, T_minor, S_minor, T, M, c_kl, D_B, M_B or c_B_kl")->required();
  exp->add_option("--k", id.k, "block index");
  exp->add_option("--l", id.l, "power of M");
  exp->add_option("--i", id.i, "minor row");
  exp->add_option("--j", id.j, "minor column");
  exp->add_option("--n", exp_n, "matrix size")->required();
  exp->add_option("--p", exp_p, "characteristic");
  exp->add_option("--ring", ring, "S or U")->check(CLI::IsMember({"S", "U"}));
  exp->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*exp) {
      id.kind = borel::parse_generator_kind(kind);
      return write_output(borel::export_generator(id, exp_n, exp_p, borel::parse_ring(ring)), out_path);
    }

    borel::CampaignConfig config;
    if (!config_path.empty()) config = borel::parse_campaign_config(read_file(config_path));
    if (!ns.empty()) config.n_range = ns;
    if (!ps.empty()) config.p_range = ps;
    if (!algebra.empty()) config.algebra = borel::parse_algebra_choice(algebra);
    if (!checks.empty()) {
      config.checks.clear();
      for (std::size_t i = 0; i < checks.size(); ++i) {
        try {
          config.checks.push_back(borel::parse_check_kind(checks[i]));
        } catch (const borel::UsageError& e) {
          throw borel::UsageError("--check[" + std::to_string(i) + "]: " + e.what());
        }
      }
    }
    if (degree_cap >= 0) config.degree_cap = degree_cap;
    if (guard != 0) config.scale_guard = guard;
    if (threads != 0) config.threads = threads;

    const borel::Report report = borel::run_campaign(config);
    const std::string text = format == "text" ? borel::render_text(report) : borel::render_json(report);
    if (const int rc = write_output(text, out_path); rc != 0) return rc;
    return report.any_failed() ? 1 : 0;
  } catch (const borel::UsageError& e) {
    std::cerr << "borelcheck: usage error: " << e.what() << "\n";
    return 2;
  } catch (const borel::Error& e) {
    std::cerr << "borelcheck: " << e.what() << "\n";
    return 2;
  }
}
