#include <doctest.h>

#include <string>

#include "borel/campaign.hpp"
#include "borel/errors.hpp"

using namespace borel;

namespace {

std::string usage_message(const std::string& text) {
  try {
    parse_campaign_config(text);
  } catch (const UsageError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("config parsing") {
  const CampaignConfig c = parse_campaign_config(R"({"n": [3, 2], "p": [2], "algebra": "g", "checks": ["oracle-dims"]})");
  CHECK(c.n_range == std::vector<int>{3, 2});
  CHECK(c.p_range == std::vector<unsigned>{2});
  CHECK(c.algebra == AlgebraChoice::g);
  CHECK(c.checks == std::vector<CheckKind>{CheckKind::oracle_dims});
  CHECK(c.degree_cap == 4);

  CHECK(usage_message("{\n  \"n\": [3,\n}").find("line 3") != std::string::npos);
  CHECK(usage_message(R"({"checkz": []})").find("'checkz'") != std::string::npos);
  CHECK(usage_message(R"({"p": [4]})").find("'p'") != std::string::npos);
  CHECK(usage_message(R"({"n": [1]})").find("'n'") != std::string::npos);
  CHECK(usage_message(R"({"checks": ["nope"]})").find("nope") != std::string::npos);
  CHECK(usage_message("[1]") != "");
  CHECK_THROWS_AS(parse_check_kind("centre"), UsageError);
  CHECK(to_string(CheckKind::oracle_dims) == "oracle-dims");
}

TEST_CASE("b cells with p dividing n are skipped") {
  const auto r = run_cell(CheckKind::invariance, 4, 2, Algebra::b, 4, scale_guard());
  REQUIRE(r.size() == 1);
  CHECK(r[0].status == Status::skipped);
  CHECK(r[0].detail.find("p-divides-n") != std::string::npos);
}

TEST_CASE("invariance cells carry one entry per (k,l,x)") {
  const auto r = run_cell(CheckKind::invariance, 3, 2, Algebra::g, 4, scale_guard());
  std::size_t with_x = 0;
  for (const auto& e : r) {
    CHECK(e.status == Status::pass);
    if (e.params.contains("x")) ++with_x;
  }
  // k = 1, l in {0, 1}, x over the six basis elements of g
  CHECK(with_x == 2 * 6);
}

TEST_CASE("small campaign") {
  CampaignConfig c;
  c.n_range = {2};
  c.p_range = {0};
  c.checks = {CheckKind::oracle_dims, CheckKind::center};
  const Report r = run_campaign(c);
  CHECK_FALSE(r.any_failed());
  CHECK(r.count(Status::pass) > 0);
  CHECK(r.results.front().check.rfind("center", 0) == 0);
  CHECK(r.results.back().check.rfind("oracle-dims", 0) == 0);
  const std::string text = render_text(r);
  CHECK(text.find("total") != std::string::npos);
  const auto j = to_json(r);
  REQUIRE(j.is_array());
  CHECK(j[0].contains("params"));
  CHECK(j[0]["status"].is_string());
}

TEST_CASE("campaign output is deterministic") {
  CampaignConfig c;
  c.n_range = {2, 3};
  c.p_range = {0, 2};
  c.threads = 1;
  const std::string a = render_json(run_campaign(c));
  c.threads = 4;
  const std::string b = render_json(run_campaign(c));
  CHECK(a == b);
  CHECK(a == render_json(run_campaign(c)));
}

TEST_CASE("generator export") {
  const auto j = nlohmann::json::parse(export_generator({GeneratorKind::c0}, 2, 0, Ring::S));
  CHECK_FALSE(j.empty());
  const std::string c2 = export_generator({GeneratorKind::C, 2}, 4, 0, Ring::S);
  CHECK(c2.find("[1,4,1]") != std::string::npos);
  const auto u = nlohmann::json::parse(export_generator({GeneratorKind::c_kl, 1, 1}, 3, 2, Ring::U));
  CHECK_FALSE(u.empty());
  CHECK_THROWS_AS(export_generator({GeneratorKind::c_kl, 1, 1}, 3, 0, Ring::S), UsageError);
  CHECK_THROWS_AS(parse_ring("V"), UsageError);
}
