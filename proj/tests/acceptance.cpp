// Acceptance report: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "borel/campaign.hpp"
#include "borel/oracle.hpp"

using namespace borel;

namespace {

struct Tally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
  std::string first_failure;

  void add(const CheckResult& r) {
    switch (r.status) {
      case Status::pass:
        ++pass;
        break;
      case Status::skipped:
        ++skipped;
        break;
      case Status::fail:
        if (fail++ == 0) first_failure = to_json(r).dump();
        break;
    }
  }
  void add(bool ok, const std::string& what) {
    CheckResult r;
    r.check = what;
    r.params = nlohmann::ordered_json::object();
    r.status = ok ? Status::pass : Status::fail;
    add(r);
  }
  bool ok() const { return fail == 0 && pass > 0; }
  std::string summary() const {
    std::ostringstream s;
    s << pass << " pass, " << fail << " fail, " << skipped << " skipped";
    if (fail != 0) s << "; first failure " << first_failure;
    return s.str();
  }
};

using Filter = std::function<bool(const CheckResult&)>;

void cells(Tally& t, CheckKind check, const std::vector<int>& ns, const std::vector<unsigned>& ps,
           const std::vector<Algebra>& algebras, const Filter& keep = {}, int degree_cap = 4) {
  for (int n : ns) {
    for (unsigned p : ps) {
      for (Algebra a : algebras) {
        for (const auto& r : run_cell(check, n, p, a, degree_cap, scale_guard())) {
          if (!keep || keep(r)) t.add(r);
        }
      }
    }
  }
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string param(const CheckResult& r, const char* key) {
  return r.params.contains(key) && r.params[key].is_string() ? r.params[key].get<std::string>() : "";
}

const std::vector<int> kSmall = {2, 3, 4};
const std::vector<unsigned> kP23 = {2, 3};
const std::vector<Algebra> kG = {Algebra::g};
const std::vector<Algebra> kGB = {Algebra::g, Algebra::b};

bool report(int id, double budget_s, const std::function<std::pair<bool, std::string>()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  auto [ok, text] = body();
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && dt > budget_s) {
    ok = false;
    text += "; over the time budget";
  }
  std::printf("criterion %d: %s (%.2fs) %s\n", id, ok ? "PASS" : "FAIL", dt, text.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  // Criteria whose failure is a known defect of the printed statement.
  const std::set<int> expected_failures = {6};
  std::set<int> failed;
  auto run = [&](int id, double budget, const std::function<std::pair<bool, std::string>()>& body) {
    if (!report(id, budget, body)) failed.insert(id);
  };

  run(1, 120, [] {
    Tally t;
    cells(t, CheckKind::invariance, {2, 3, 4, 5, 6}, kP23, kG, [](const CheckResult& r) { return r.params.contains("x"); });
    return std::pair{t.ok(), "invariance of C(k), M(k), c(k,l): " + t.summary()};
  });

  run(2, 0, [] {
    Tally t;
    std::set<std::string> regions;
    for (int n : {4, 5}) {
      for (unsigned p : {0U, 2U, 3U}) {
        for (const auto& r : region_table_checks(n, p)) {
          t.add(r);
          regions.insert(param(r, "region"));
        }
      }
    }
    bool all = true;
    for (const char* m : {"m1", "m2", "m3", "m4", "m5", "m6"}) all = all && regions.contains(m);
    if (!all) t.add(false, "not every region was exercised");
    return std::pair{t.ok(), "ad e_st and ad e_ss case tables: " + t.summary()};
  });

  run(3, 0, [] {
    Tally t;
    cells(t, CheckKind::relations, {2, 3, 4, 5}, kP23, kGB);
    return std::pair{t.ok(), "relations in S (n <= 5) and U (n <= 4): " + t.summary()};
  });

  run(4, 300, [] {
    Tally t;
    cells(t, CheckKind::center, kSmall, kP23, kGB, [](const CheckResult& r) { return param(r, "claim") != "gr"; });
    return std::pair{t.ok(), "centrality in U(g) and U(b): " + t.summary()};
  });

  run(5, 0, [] {
    Tally t;
    cells(t, CheckKind::center, kSmall, kP23, kGB, [](const CheckResult& r) { return param(r, "claim") == "gr"; });
    return std::pair{t.ok(), "gr z(k,l) = c(k,l), gr(e_ii^p - e_ii) = e_ii^p: " + t.summary()};
  });

  run(6, 600, [] {
    Tally t;
    std::string notes;
    for (auto [n, p] : std::vector<std::pair<int, unsigned>>{{3, 2}, {3, 3}, {5, 2}}) {
      const JacobianOutcome c = jacobian_check(make_jacobian_spec(JacobianKind::center, n, p));
      t.add(c.holds, "center n=" + std::to_string(n));
      for (int k = 1; k <= (n - 1) / 2; ++k) {
        const JacobianOutcome v = jacobian_check(make_jacobian_spec(JacobianKind::center_variant, n, p, k));
        t.add(v.holds, "center-variant");
        if (!v.holds) {
          notes += "; phi_k variant fails at n=" + std::to_string(n) + " p=" + std::to_string(p) +
                   " k=" + std::to_string(k) + ": " + v.detail;
        }
      }
    }
    for (auto [n, p] : std::vector<std::pair<int, unsigned>>{{3, 2}, {4, 2}, {3, 3}}) {
      const JacobianOutcome s = jacobian_check(make_jacobian_spec(JacobianKind::semicenter, n, p));
      t.add(s.holds, "semicenter n=" + std::to_string(n));
    }
    return std::pair{t.ok(), "Jacobian determinants: " + t.summary() + notes};
  });

  run(7, 0, [] {
    Tally t;
    auto space = [](const char* s) {
      return [s](const CheckResult& r) { return param(r, "space") == s; };
    };
    cells(t, CheckKind::oracle_dims, kSmall, {0}, kG, space("center"));
    cells(t, CheckKind::oracle_dims, {3}, {0}, {Algebra::b}, space("center"));
    cells(t, CheckKind::oracle_dims, {2}, {0}, kG, space("U-center"));
    return std::pair{t.ok(), "char-0 centers, S and U: " + t.summary()};
  });

  run(8, 0, [] {
    Tally t;
    std::string text;
    struct Case {
      int n;
      Algebra a;
      std::vector<int> degrees;
    };
    for (const Case& c : {Case{3, Algebra::g, {1, 1, 2}}, Case{3, Algebra::b, {1, 2}}, Case{4, Algebra::g, {1, 1, 2, 2}}}) {
      std::vector<std::size_t> kernel;
      for (int d = 0; d <= 3; ++d) {
        const SemiInvariantSplit s = semiinvariant_space(c.n, 0, d, c.a);
        kernel.push_back(s.n_invariants.dimension());
        t.add(s.pieces_dimension() == s.n_invariants.dimension(), "pieces");
      }
      const auto counted = free_algebra_dims(c.degrees, 3);
      t.add(kernel == counted, "dims");
      text += "; n=" + std::to_string(c.n) + " " + to_string(c.a) + ": kernel " + join(kernel) + ", generator count " +
              join(counted);
    }
    text += "; the printed b list 1,1,2,3 disagrees with both paths";
    return std::pair{t.ok(), "semi-center dims, two paths: " + t.summary() + text};
  });

  run(9, 0, [] {
    Tally t;
    const std::size_t kernel = invariant_space(3, 2, Algebra::g, Subalgebra::g, 3).dimension();
    const std::size_t hilbert = center_module_dims(3, 2, 3)[3];
    t.add(kernel == 7 && hilbert == 7, "dim 7");
    cells(t, CheckKind::oracle_dims, kSmall, kP23, kG,
          [](const CheckResult& r) { return param(r, "space") == "membership" || param(r, "space") == "center"; });
    return std::pair{t.ok(), "kernel " + std::to_string(kernel) + ", Hilbert count " + std::to_string(hilbert) +
                                 "; module dims and membership: " + t.summary()};
  });

  run(10, 0, [] {
    Tally t;
    cells(t, CheckKind::weights, {3}, {0}, kG);
    cells(t, CheckKind::weights, {2, 4, 5, 6}, {0}, kG, {}, 0);
    return std::pair{t.ok(), "weights, additivity, n = 3 decomposition: " + t.summary()};
  });

  run(11, 0, [] {
    Tally t;
    cells(t, CheckKind::reduction, {2, 3, 4, 5}, {2, 3, 5}, kGB);
    return std::pair{t.ok(), "reduction mod p: " + t.summary()};
  });

  run(12, 0, [] {
    const CampaignConfig c;
    const std::string a = render_json(run_campaign(c));
    const std::string b = render_json(run_campaign(c));
    return std::pair{a == b && !a.empty(), "two default runs, " + std::to_string(a.size()) + " bytes each, " +
                                               (a == b ? "identical" : "different")};
  });

  int status = 0;
  for (int id : failed) {
    if (!expected_failures.contains(id)) status = 1;
  }
  if (!failed.empty()) {
    std::printf("failed:");
    for (int id : failed) std::printf(" %d%s", id, expected_failures.contains(id) ? " (documented)" : "");
    std::printf("\n");
  }
  return status;
}
