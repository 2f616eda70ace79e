#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "borel/invariants.hpp"
#include "borel/oracle.hpp"

namespace borel {

enum class CheckKind { invariance, relations, weights, center, semicenter, jacobian, separating, oracle_dims, reduction };

/// Report names: "invariance", ..., "oracle-dims", "reduction".
std::string to_string(CheckKind c);
CheckKind parse_check_kind(std::string_view text);
std::vector<CheckKind> all_check_kinds();

enum class AlgebraChoice { g, b, both };
std::string to_string(AlgebraChoice a);
AlgebraChoice parse_algebra_choice(std::string_view text);

struct CampaignConfig {
  std::vector<int> n_range = {2, 3, 4};
  std::vector<unsigned> p_range = {0, 2, 3};
  AlgebraChoice algebra = AlgebraChoice::both;
  std::vector<CheckKind> checks = all_check_kinds();
  int degree_cap = 4;
  std::size_t scale_guard = borel::scale_guard();
  unsigned threads = 0;  ///< 0: one per hardware thread
};

/// Throws UsageError naming the offending field.
void validate(const CampaignConfig& config);

/// Reads a JSON config object with optional keys n, p, algebra, checks,
/// degree_cap, scale_guard, threads. Throws UsageError with the line and
/// column of a syntax error or the name of a bad field.
CampaignConfig parse_campaign_config(std::string_view json_text);

struct Report {
  std::vector<CheckResult> results;

  std::size_t count(Status s) const;
  bool any_failed() const { return count(Status::fail) != 0; }
};

/// Runs every (check, n, p, algebra) cell of the grid on a worker pool.
/// Results come back in cell order (checks, then n, p, algebra), each
/// cell's entries in emission order, independent of scheduling.
Report run_campaign(const CampaignConfig& config);

/// The entries of one cell.
std::vector<CheckResult> run_cell(CheckKind check, int n, unsigned p, Algebra algebra, int degree_cap,
                                  std::size_t guard);

nlohmann::ordered_json to_json(const Report& r);
/// JSON array, two-space indent, trailing newline.
std::string render_json(const Report& r);
/// Per-check pass/fail/skipped table followed by every failure.
std::string render_text(const Report& r);

enum class Ring { S, U };
Ring parse_ring(std::string_view text);

/// Serialized generator: Poly JSON for S, PBW JSON for U. The U lift lives
/// in U(b) for the B-kinds and in U(g) otherwise.
std::string export_generator(const GeneratorId& id, int n, unsigned p, Ring ring);

}  // namespace borel
