#include "borel/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "borel/errors.hpp"
#include "borel/lie.hpp"
#include "borel/pbw.hpp"

namespace borel {

namespace {

const std::vector<std::pair<CheckKind, std::string>>& check_names() {
  static const std::vector<std::pair<CheckKind, std::string>> names = {
      {CheckKind::invariance, "invariance"}, {CheckKind::relations, "relations"},
      {CheckKind::weights, "weights"},       {CheckKind::center, "center"},
      {CheckKind::semicenter, "semicenter"}, {CheckKind::jacobian, "jacobian"},
      {CheckKind::separating, "separating"}, {CheckKind::oracle_dims, "oracle-dims"},
      {CheckKind::reduction, "reduction"},
  };
  return names;
}

}  // namespace

std::string to_string(CheckKind c) {
  for (const auto& [kind, name] : check_names()) {
    if (kind == c) return name;
  }
  return "?";
}

CheckKind parse_check_kind(std::string_view text) {
  for (const auto& [kind, name] : check_names()) {
    if (name == text) return kind;
  }
  throw UsageError("unknown check '" + std::string(text) + "'");
}

std::vector<CheckKind> all_check_kinds() {
  std::vector<CheckKind> out;
  for (const auto& [kind, name] : check_names()) out.push_back(kind);
  return out;
}

std::string to_string(AlgebraChoice a) {
  switch (a) {
    case AlgebraChoice::g:
      return "g";
    case AlgebraChoice::b:
      return "b";
    case AlgebraChoice::both:
      return "both";
  }
  return "?";
}

AlgebraChoice parse_algebra_choice(std::string_view text) {
  if (text == "g") return AlgebraChoice::g;
  if (text == "b") return AlgebraChoice::b;
  if (text == "both") return AlgebraChoice::both;
  throw UsageError("algebra must be g, b or both, got '" + std::string(text) + "'");
}

Ring parse_ring(std::string_view text) {
  if (text == "S") return Ring::S;
  if (text == "U") return Ring::U;
  throw UsageError("ring must be S or U, got '" + std::string(text) + "'");
}

void validate(const CampaignConfig& config) {
  if (config.n_range.empty()) throw UsageError("field 'n': empty");
  for (std::size_t i = 0; i < config.n_range.size(); ++i) {
    const int n = config.n_range[i];
    if (n < 2 || n > kMaxN) {
      throw UsageError("field 'n'[" + std::to_string(i) + "]: " + std::to_string(n) + " is outside 2.." +
                       std::to_string(kMaxN));
    }
  }
  if (config.p_range.empty()) throw UsageError("field 'p': empty");
  for (std::size_t i = 0; i < config.p_range.size(); ++i) {
    const unsigned p = config.p_range[i];
    if (p != 0 && !is_prime(p)) {
      throw UsageError("field 'p'[" + std::to_string(i) + "]: " + std::to_string(p) + " is neither 0 nor a prime");
    }
  }
  if (config.checks.empty()) throw UsageError("field 'checks': empty");
  if (config.degree_cap < 0) throw UsageError("field 'degree_cap': negative");
  if (config.scale_guard == 0) throw UsageError("field 'scale_guard': must be positive");
}

CampaignConfig parse_campaign_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < json_text.size(); ++i) {
      if (json_text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw UsageError("config line " + std::to_string(line) + ", column " + std::to_string(column) +
                     ": malformed JSON");
  }
  if (!j.is_object()) throw UsageError("config: top level must be an object");

  CampaignConfig c;
  const auto expect = [](bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw UsageError("field '" + field + "': " + what);
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "n") {
      expect(v.is_array(), key, "expected an array of integers");
      c.n_range.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        expect(v[i].is_number_integer(), key + "[" + std::to_string(i) + "]", "expected an integer");
        c.n_range.push_back(v[i].get<int>());
      }
    } else if (key == "p") {
      expect(v.is_array(), key, "expected an array of integers");
      c.p_range.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        expect(v[i].is_number_unsigned(), key + "[" + std::to_string(i) + "]", "expected a natural number");
        c.p_range.push_back(v[i].get<unsigned>());
      }
    } else if (key == "algebra") {
      expect(v.is_string(), key, "expected \"g\", \"b\" or \"both\"");
      c.algebra = parse_algebra_choice(v.get<std::string>());
    } else if (key == "checks") {
      expect(v.is_array(), key, "expected an array of check names");
      c.checks.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string field = key + "[" + std::to_string(i) + "]";
        expect(v[i].is_string(), field, "expected a check name");
        try {
          c.checks.push_back(parse_check_kind(v[i].get<std::string>()));
        } catch (const UsageError& e) {
          throw UsageError("field '" + field + "': " + e.what());
        }
      }
    } else if (key == "degree_cap") {
      expect(v.is_number_unsigned(), key, "expected a natural number");
      c.degree_cap = v.get<int>();
    } else if (key == "scale_guard") {
      expect(v.is_number_unsigned(), key, "expected a natural number");
      c.scale_guard = v.get<std::size_t>();
    } else if (key == "threads") {
      expect(v.is_number_unsigned(), key, "expected a natural number");
      c.threads = v.get<unsigned>();
    } else {
      throw UsageError("field '" + key + "': unknown key");
    }
  }
  validate(c);
  return c;
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [s](const CheckResult& r) { return r.status == s; }));
}

// --- cells -----------------------------------------------------------------

namespace {

class Cell {
 public:
  Cell(CheckKind check, int n, unsigned p, Algebra algebra, int degree_cap, std::size_t guard)
      : check_(check), n_(n), p_(p), algebra_(algebra), cap_(degree_cap), guard_(guard), h_(h_of(n)) {}

  std::vector<CheckResult> run();

 private:
  nlohmann::ordered_json params() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    j["p"] = p_;
    j["algebra"] = to_string(algebra_);
    return j;
  }
  void emit(nlohmann::ordered_json extra, bool ok, const std::string& detail) {
    nlohmann::ordered_json j = params();
    for (auto& [k, v] : extra.items()) j[k] = v;
    out_.push_back(CheckResult{to_string(check_), std::move(j), ok ? Status::pass : Status::fail,
                               ok ? "" : detail});
  }
  void skip(nlohmann::ordered_json extra, const std::string& reason) {
    nlohmann::ordered_json j = params();
    for (auto& [k, v] : extra.items()) j[k] = v;
    out_.push_back(CheckResult{to_string(check_), std::move(j), Status::skipped, reason});
  }
  // Results computed elsewhere, relabelled with the cell's check and algebra.
  void adopt(std::vector<CheckResult> rs) {
    for (auto& r : rs) {
      nlohmann::ordered_json j = params();
      for (auto& [k, v] : r.params.items()) {
        if (k != "n" && k != "p") j[k] = v;
      }
      if (r.check != to_string(check_)) j["table"] = r.check;
      r.check = to_string(check_);
      r.params = std::move(j);
      out_.push_back(std::move(r));
    }
  }
  // Runs f, turning TooLarge into a skipped entry and other errors into failures.
  template <class F>
  void guarded(const nlohmann::ordered_json& extra, F&& f) {
    try {
      f();
    } catch (const TooLarge& e) {
      skip(extra, std::string("scale guard: ") + e.what());
    } catch (const Error& e) {
      emit(extra, false, std::string("error: ") + e.what());
    }
  }

  bool b() const { return algebra_ == Algebra::b; }
  Poly M(int k) const { return b() ? build_M_B(n_, k, p_) : build_M(n_, k, p_); }
  Poly c_kl(int k, int l) const { return b() ? build_c_B_kl(n_, k, l, p_) : build_c_kl(n_, k, l, p_); }
  std::string M_name() const { return b() ? "M_B" : "M"; }
  std::string c_name() const { return b() ? "c_B" : "c"; }
  Subalgebra acting() const { return b() ? Subalgebra::b : Subalgebra::g; }
  Weight band_weight(int k) const;

  void invariance();
  void relations();
  void weights();
  void center();
  void semicenter();
  void jacobian();
  void separating();
  void oracle_dims();
  void reduction();

  CheckKind check_;
  int n_;
  unsigned p_;
  Algebra algebra_;
  int cap_;
  std::size_t guard_;
  int h_;
  std::vector<CheckResult> out_;
};

std::string term_detail(const Poly& f) {
  if (f.is_zero()) return "0";
  const auto& [m, c] = f.leading_term();
  return "leading term " + Poly::term(c, m).to_string();
}

// +1 on rows 1..k, -1 on rows n-k+1..n; on b the value at eps(i,i) is w_i - w_n.
Weight Cell::band_weight(int k) const {
  std::vector<FieldScalar> w;
  for (int s = 1; s <= n_; ++s) w.emplace_back(p_, s <= k ? 1 : (s > n_ - k ? -1 : 0));
  if (!b()) return Weight{Algebra::g, n_, w};
  std::vector<FieldScalar> eps;
  for (int i = 0; i + 1 < n_; ++i) eps.push_back(w[static_cast<std::size_t>(i)] - w.back());
  return Weight{Algebra::b, n_, eps};
}

std::vector<CheckResult> Cell::run() {
  if (b() && p_ != 0 && n_ % static_cast<int>(p_) == 0) {
    skip({}, "p-divides-n");
    return std::move(out_);
  }
  switch (check_) {
    case CheckKind::invariance:
      invariance();
      break;
    case CheckKind::relations:
      relations();
      break;
    case CheckKind::weights:
      weights();
      break;
    case CheckKind::center:
      center();
      break;
    case CheckKind::semicenter:
      semicenter();
      break;
    case CheckKind::jacobian:
      jacobian();
      break;
    case CheckKind::separating:
      separating();
      break;
    case CheckKind::oracle_dims:
      oracle_dims();
      break;
    case CheckKind::reduction:
      reduction();
      break;
  }
  return std::move(out_);
}

void Cell::invariance() {
  if (h_ == 0) {
    skip({}, "no C(k), M(k) families for n = 2");
    return;
  }
  const std::vector<LieElem> xs = basis(n_, p_, algebra_);
  for (int k = 1; k <= h_; ++k) {
    const Poly C = build_C(n_, k, p_);
    const Poly Mk = M(k);
    const int ls = p_ == 0 ? 1 : static_cast<int>(p_);
    for (int l = 0; l < ls; ++l) {
      const Poly c = p_ == 0 ? Poly(p_) : c_kl(k, l);
      for (const LieElem& x : xs) {
        if (p_ == 0 && !x.in_n()) continue;
        nlohmann::ordered_json extra;
        extra["k"] = k;
        if (p_ != 0) extra["l"] = l;
        extra["x"] = x.to_string();
        std::string detail;
        if (p_ != 0) {
          const Poly v = adjoint_apply(x, c);
          if (!v.is_zero()) detail = "ad x(" + c_name() + "(k,l)) has " + term_detail(v);
        }
        if (detail.empty() && x.in_n()) {
          const Poly vc = adjoint_apply(x, C);
          const Poly vm = adjoint_apply(x, Mk);
          if (!vc.is_zero()) detail = "ad x(C(k)) has " + term_detail(vc);
          if (detail.empty() && !vm.is_zero()) detail = "ad x(" + M_name() + "(k)) has " + term_detail(vm);
        }
        emit(extra, detail.empty(), detail);
      }
    }
  }
  if (!b()) adopt(region_table_checks(n_, p_));
}

void Cell::relations() {
  if (p_ == 0) {
    skip({}, "relations are stated for p > 0");
    return;
  }
  if (h_ == 0) {
    skip({}, "no c(k,l) families for n = 2");
    return;
  }
  const bool with_U = n_ <= 4;
  const auto alg = PBWAlgebra::make(algebra_, n_, p_);
  const auto ip = static_cast<int>(p_);
  for (int k = 1; k <= h_; ++k) {
    const Poly C = build_C(n_, k, p_);
    const Poly Mk = M(k);
    std::vector<Poly> cs;
    for (int l = 0; l < ip; ++l) cs.push_back(c_kl(k, l));
    std::vector<PBWElem> zs;
    PBWElem zc(alg);
    PBWElem zm(alg);
    if (with_U) {
      const GeneratorKind ck = b() ? GeneratorKind::c_B_kl : GeneratorKind::c_kl;
      for (int l = 0; l < ip; ++l) zs.push_back(lift_generator({ck, k, l}, n_, p_, alg));
      zc = lift_generator({GeneratorKind::C, k}, n_, p_, alg);
      zm = lift_generator({b() ? GeneratorKind::M_B : GeneratorKind::M, k}, n_, p_, alg);
    }
    for (int i = 0; i < ip; ++i) {
      for (int j = 0; j < ip; ++j) {
        const CarrySplit sr = rs_decompose(i, j, p_);
        nlohmann::ordered_json extra;
        extra["k"] = k;
        extra["i"] = i;
        extra["j"] = j;
        extra["ring"] = "S";
        guarded(extra, [&] {
          const IdentityCheck r =
              b() ? compare_polys(cs[static_cast<std::size_t>(i)] * cs[static_cast<std::size_t>(j)],
                                  cs[static_cast<std::size_t>(sr.r)] *
                                      poly_pow(C, p_ * static_cast<unsigned>(1 - sr.s)) *
                                      poly_pow(Mk, p_ * static_cast<unsigned>(sr.s)))
                  : check_relation(n_, k, i, j, p_);
          emit(extra, r.holds, r.detail);
        });
        if (!with_U) continue;
        extra["ring"] = "U";
        guarded(extra, [&] {
          const IdentityCheck r =
              b() ? compare_elems(zs[static_cast<std::size_t>(i)] * zs[static_cast<std::size_t>(j)],
                                  zs[static_cast<std::size_t>(sr.r)] *
                                      u_pow(zc, p_ * static_cast<unsigned>(1 - sr.s)) *
                                      u_pow(zm, p_ * static_cast<unsigned>(sr.s)))
                  : check_relation_U(n_, k, i, j, p_);
          emit(extra, r.holds, r.detail);
        });
      }
    }
  }
}

void Cell::weights() {
  std::vector<std::pair<std::string, Poly>> gens;
  for (int k = 1; k <= n_ / 2; ++k) {
    const Poly C = build_C(n_, k, p_);
    const Weight w = band_weight(k);
    nlohmann::ordered_json extra;
    extra["generator"] = "C(" + std::to_string(k) + ")";
    guarded(extra, [&] {
      const Weight got = weight_of(C, algebra_, n_);
      emit(extra, got == w, "weight " + got.to_string() + ", table " + w.to_string());
    });
    gens.emplace_back("C(" + std::to_string(k) + ")", C);
  }
  for (int k = 1; k <= h_; ++k) {
    const Poly Mk = M(k);
    const Weight w = band_weight(k);
    const std::string name = M_name() + "(" + std::to_string(k) + ")";
    nlohmann::ordered_json extra;
    extra["generator"] = name;
    guarded(extra, [&] {
      const Weight got = weight_of(Mk, algebra_, n_);
      emit(extra, got == w, "weight " + got.to_string() + ", table " + w.to_string());
    });
    gens.emplace_back(name, Mk);
  }
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t c = a; c < gens.size(); ++c) {
      nlohmann::ordered_json extra;
      extra["product"] = gens[a].first + "*" + gens[c].first;
      guarded(extra, [&] {
        const Weight wa = weight_of(gens[a].second, algebra_, n_);
        const Weight wc = weight_of(gens[c].second, algebra_, n_);
        const Weight got = weight_of(gens[a].second * gens[c].second, algebra_, n_);
        emit(extra, got == wa + wc, "weight " + got.to_string() + ", sum " + (wa + wc).to_string());
      });
    }
  }
  for (int d = 0; d <= std::min(cap_, 3); ++d) {
    nlohmann::ordered_json extra;
    extra["decomposition_degree"] = d;
    guarded(extra, [&] {
      const SemiInvariantSplit split = semiinvariant_space(n_, p_, d, algebra_, guard_);
      const std::size_t total = split.n_invariants.dimension();
      emit(extra, split.pieces_dimension() == total,
           "weight pieces sum to " + std::to_string(split.pieces_dimension()) + ", n-invariants have " +
               std::to_string(total));
    });
  }
}

void Cell::center() {
  const auto alg = PBWAlgebra::make(algebra_, n_, p_);
  const auto lift = [&](GeneratorId id) { return lift_generator(id, n_, p_, alg); };
  const auto central = [&](const std::string& name, const PBWElem& u) {
    nlohmann::ordered_json extra;
    extra["element"] = name;
    extra["claim"] = "central";
    emit(extra, is_central(u), "a basis letter fails to commute with it");
  };
  const auto graded = [&](const std::string& name, const PBWElem& u, const Poly& want) {
    nlohmann::ordered_json extra;
    extra["element"] = name;
    extra["claim"] = "gr";
    const IdentityCheck r = compare_polys(gr_map(u), want);
    emit(extra, r.holds, r.detail);
  };

  if (!b()) {
    const PBWElem z0 = lift({GeneratorKind::c0});
    central("z0", z0);
    graded("z0", z0, build_c0(n_, p_));
  }
  if (p_ != 0) {
    const GeneratorKind ck = b() ? GeneratorKind::c_B_kl : GeneratorKind::c_kl;
    for (int k = 1; k <= h_; ++k) {
      for (int l = 0; l < static_cast<int>(p_); ++l) {
        const std::string name = "z" + std::string(b() ? "_B" : "") + "(" + std::to_string(k) + "," +
                                 std::to_string(l) + ")";
        nlohmann::ordered_json extra;
        extra["element"] = name;
        guarded(extra, [&] {
          const PBWElem z = b() ? build_zB(n_, k, l, p_) : lift({ck, k, l});
          central(name, z);
          graded(name, z, c_kl(k, l));
        });
      }
    }
    const std::vector<PBWElem> zp = build_Zp_generators(n_, p_, algebra_);
    for (std::size_t x = 0; x < zp.size(); ++x) {
      const auto [i, j] = alg->label(static_cast<int>(x));
      const std::string name = std::string("Zp(") + (b() && i == j ? "eps" : "e") + std::to_string(i) + "," +
                               std::to_string(j) + ")";
      central(name, zp[x]);
      graded(name, zp[x], poly_pow(alg->letter_poly(static_cast<int>(x)), p_));
    }
  }
  // The constructed semi-central elements commute pairwise.
  std::vector<std::pair<std::string, PBWElem>> sz;
  if (!b()) sz.emplace_back("z0", lift({GeneratorKind::c0}));
  for (int k = 1; k <= n_ / 2; ++k) sz.emplace_back("C(" + std::to_string(k) + ")", lift({GeneratorKind::C, k}));
  for (int k = 1; k <= h_; ++k) {
    sz.emplace_back(M_name() + "(" + std::to_string(k) + ")",
                    lift({b() ? GeneratorKind::M_B : GeneratorKind::M, k}));
  }
  for (std::size_t a = 0; a < sz.size(); ++a) {
    for (std::size_t c = a + 1; c < sz.size(); ++c) {
      nlohmann::ordered_json extra;
      extra["element"] = sz[a].first + "," + sz[c].first;
      extra["claim"] = "commute";
      const PBWElem comm = commutator(sz[a].second, sz[c].second);
      emit(extra, comm.is_zero(), comm.is_zero() ? "" : "commutator " + comm.to_string());
    }
  }
}

void Cell::semicenter() {
  const auto alg = PBWAlgebra::make(algebra_, n_, p_);
  std::vector<std::pair<std::string, GeneratorId>> gens;
  if (!b()) gens.emplace_back("c0", GeneratorId{GeneratorKind::c0});
  for (int k = 1; k <= n_ / 2; ++k) gens.emplace_back("C(" + std::to_string(k) + ")", GeneratorId{GeneratorKind::C, k});
  for (int k = 1; k <= h_; ++k) {
    gens.emplace_back(M_name() + "(" + std::to_string(k) + ")",
                      GeneratorId{b() ? GeneratorKind::M_B : GeneratorKind::M, k});
  }
  std::map<int, SemiInvariantSplit> splits;
  for (const auto& [name, id] : gens) {
    const Poly f = build_generator(id, n_, p_);
    nlohmann::ordered_json extra;
    extra["generator"] = name;
    extra["ring"] = "U";
    guarded(extra, [&] {
      const Weight ws = weight_of(f, algebra_, n_);
      const Weight wu = semicentral_weight(lift_generator(id, n_, p_, alg));
      emit(extra, ws == wu, "U weight " + wu.to_string() + ", S weight " + ws.to_string());
    });
    extra["ring"] = "S";
    const int d = f.degree();
    if (d > cap_) {
      skip(extra, "degree " + std::to_string(d) + " above the degree cap");
      continue;
    }
    guarded(extra, [&] {
      if (!splits.contains(d)) splits.emplace(d, semiinvariant_space(n_, p_, d, algebra_, guard_));
      const Weight w = weight_of(f, algebra_, n_);
      const auto& pieces = splits.at(d).pieces;
      const auto it = std::find_if(pieces.begin(), pieces.end(), [&](const WeightSpace& ws) { return ws.weight == w; });
      const bool ok = it != pieces.end() && in_span(it->space.basis, f);
      emit(extra, ok, "not in the oracle's weight " + w.to_string() + " piece of degree " + std::to_string(d));
    });
  }
}

void Cell::jacobian() {
  if (b()) {
    skip({}, "the Jacobian criteria are stated for g");
    return;
  }
  if (p_ == 0) {
    skip({}, "the Jacobian criteria need p > 0");
    return;
  }
  const auto run = [&](JacobianKind which, int k) {
    nlohmann::ordered_json extra;
    extra["which"] = to_string(which);
    if (k > 0) extra["k"] = k;
    guarded(extra, [&] {
      const JacobianOutcome o = jacobian_check(make_jacobian_spec(which, n_, p_, k), guard_);
      emit(extra, o.holds, o.detail);
    });
  };
  run(JacobianKind::center, 0);
  for (int k = 1; k <= h_; ++k) run(JacobianKind::center_variant, k);
  run(JacobianKind::semicenter, 0);
  for (int k = 1; k <= h_; ++k) run(JacobianKind::semicenter_variant, k);
}

void Cell::separating() {
  if (b()) {
    skip({}, "the separating facts are stated for g");
    return;
  }
  adopt(separating_checks(n_, p_));
}

void Cell::oracle_dims() {
  // Poisson center by degree.
  std::vector<std::size_t> expected;
  if (p_ == 0) {
    for (int d = 0; d <= cap_; ++d) expected.push_back(b() ? (d == 0 ? 1 : 0) : 1);
  } else if (!b()) {
    expected = center_module_dims(n_, p_, cap_);
  }
  std::vector<std::size_t> center_dims;
  for (int d = 0; d <= cap_; ++d) {
    nlohmann::ordered_json extra;
    extra["space"] = "center";
    extra["degree"] = d;
    guarded(extra, [&] {
      const std::size_t dim = invariant_space(n_, p_, algebra_, acting(), d, guard_).dimension();
      center_dims.push_back(dim);
      if (expected.empty()) {
        skip(extra, "no closed-form count; dimension " + std::to_string(dim));
      } else {
        const std::size_t want = expected[static_cast<std::size_t>(d)];
        emit(extra, dim == want, "kernel " + std::to_string(dim) + ", expected " + std::to_string(want));
      }
    });
  }

  // Semi-center against the free algebra on the generator degrees.
  if (p_ == 0) {
    std::vector<int> degrees;
    if (!b()) degrees.push_back(1);
    for (int k = 1; k <= n_ / 2; ++k) degrees.push_back(k);
    for (int k = 1; k <= h_; ++k) degrees.push_back(k + 1);
    const std::vector<std::size_t> free_dims = free_algebra_dims(degrees, cap_);
    for (int d = 0; d <= cap_; ++d) {
      nlohmann::ordered_json extra;
      extra["space"] = "semicenter";
      extra["degree"] = d;
      guarded(extra, [&] {
        const SemiInvariantSplit split = semiinvariant_space(n_, p_, d, algebra_, guard_);
        const std::size_t dim = split.n_invariants.dimension();
        const std::size_t want = free_dims[static_cast<std::size_t>(d)];
        emit(extra, dim == want && split.pieces_dimension() == dim,
             "kernel " + std::to_string(dim) + ", pieces " + std::to_string(split.pieces_dimension()) +
                 ", generator-degree count " + std::to_string(want));
      });
    }
  }

  // Enveloping-algebra center against the cumulative commutative dimensions.
  const int u_cap = std::min(cap_, n_ == 2 ? 3 : (n_ == 3 ? 2 : -1));
  for (int d = 0; d <= u_cap && static_cast<std::size_t>(d) < center_dims.size(); ++d) {
    nlohmann::ordered_json extra;
    extra["space"] = "U-center";
    extra["degree"] = d;
    guarded(extra, [&] {
      const std::size_t dim = center_space_U(n_, p_, d, algebra_, guard_).size();
      std::size_t want = 0;
      for (int e = 0; e <= d; ++e) want += center_dims[static_cast<std::size_t>(e)];
      emit(extra, dim == want, "U_" + std::to_string(d) + " center " + std::to_string(dim) +
                                   ", cumulative S-center " + std::to_string(want));
    });
  }

  // Closed-form invariants lie in the kernel of their degree.
  std::vector<std::pair<std::string, Poly>> members;
  if (!b()) members.emplace_back("c0", build_c0(n_, p_));
  if (p_ != 0) {
    for (int k = 1; k <= h_; ++k) {
      for (int l = 0; l < static_cast<int>(p_); ++l) {
        members.emplace_back(c_name() + "(" + std::to_string(k) + "," + std::to_string(l) + ")", c_kl(k, l));
      }
    }
    if (!b()) {
      for (const LieElem& x : basis(n_, p_, Algebra::g)) {
        const Poly e = x.to_poly();
        members.emplace_back(x.to_string() + "^p", poly_pow(e, p_));
      }
    }
  }
  std::map<int, GradedSpace> spaces;
  for (const auto& [name, f] : members) {
    nlohmann::ordered_json extra;
    extra["space"] = "membership";
    extra["generator"] = name;
    guarded(extra, [&] {
      const int d = f.degree();
      if (!spaces.contains(d)) spaces.emplace(d, invariant_space(n_, p_, algebra_, acting(), d, guard_));
      emit(extra, in_span(spaces.at(d).basis, f), "outside the degree-" + std::to_string(d) + " kernel");
    });
  }
}

void Cell::reduction() {
  if (p_ == 0) {
    skip({}, "reduction needs p > 0");
    return;
  }
  for (const GeneratorId& id : all_generators(n_, p_)) {
    const bool b_kind = id.kind == GeneratorKind::D_B || id.kind == GeneratorKind::M_B ||
                        id.kind == GeneratorKind::c_B_kl;
    if (b_kind != b()) continue;
    nlohmann::ordered_json extra;
    extra["generator"] = to_string(id);
    guarded(extra, [&] {
      const Poly over_q = build_generator(id, n_, p_, 0);
      const IdentityCheck r = compare_polys(rho_p_reduce(over_q, p_), build_generator(id, n_, p_, p_));
      emit(extra, r.holds, r.detail);
    });
  }
}

}  // namespace

std::vector<CheckResult> run_cell(CheckKind check, int n, unsigned p, Algebra algebra, int degree_cap,
                                  std::size_t guard) {
  return Cell(check, n, p, algebra, degree_cap, guard).run();
}

Report run_campaign(const CampaignConfig& config) {
  validate(config);
  std::vector<int> ns = config.n_range;
  std::vector<unsigned> ps = config.p_range;
  std::vector<CheckKind> checks = config.checks;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::sort(checks.begin(), checks.end());
  checks.erase(std::unique(checks.begin(), checks.end()), checks.end());
  std::vector<Algebra> algebras;
  if (config.algebra != AlgebraChoice::b) algebras.push_back(Algebra::g);
  if (config.algebra != AlgebraChoice::g) algebras.push_back(Algebra::b);

  struct Task {
    CheckKind check;
    int n;
    unsigned p;
    Algebra algebra;
  };
  std::vector<Task> tasks;
  for (CheckKind c : checks) {
    for (int n : ns) {
      for (unsigned p : ps) {
        for (Algebra a : algebras) tasks.push_back({c, n, p, a});
      }
    }
  }

  std::vector<std::vector<CheckResult>> slots(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      try {
        slots[i] = run_cell(t.check, t.n, t.p, t.algebra, config.degree_cap, config.scale_guard);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report report;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (errors[i]) {
      std::string what = "unknown error";
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      nlohmann::ordered_json j;
      j["n"] = tasks[i].n;
      j["p"] = tasks[i].p;
      j["algebra"] = to_string(tasks[i].algebra);
      report.results.push_back(CheckResult{to_string(tasks[i].check), std::move(j), Status::fail, "error: " + what});
      continue;
    }
    for (auto& r : slots[i]) report.results.push_back(std::move(r));
  }
  return report;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& c : r.results) j.push_back(to_json(c));
  return j;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string render_text(const Report& r) {
  struct Counts {
    std::size_t pass = 0, fail = 0, skipped = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Counts> by_check;
  for (const auto& c : r.results) {
    if (!by_check.contains(c.check)) order.push_back(c.check);
    Counts& k = by_check[c.check];
    (c.status == Status::pass ? k.pass : c.status == Status::fail ? k.fail : k.skipped)++;
  }
  std::ostringstream os;
  os << std::left << std::setw(14) << "check" << std::right << std::setw(8) << "pass" << std::setw(8) << "fail"
     << std::setw(9) << "skipped" << "\n";
  for (const auto& name : order) {
    const Counts& k = by_check[name];
    os << std::left << std::setw(14) << name << std::right << std::setw(8) << k.pass << std::setw(8) << k.fail
       << std::setw(9) << k.skipped << "\n";
  }
  os << std::left << std::setw(14) << "total" << std::right << std::setw(8) << r.count(Status::pass)
     << std::setw(8) << r.count(Status::fail) << std::setw(9) << r.count(Status::skipped) << "\n";
  for (const auto& c : r.results) {
    if (c.status != Status::fail) continue;
    os << "FAIL " << c.check << " " << c.params.dump() << ": " << c.detail << "\n";
  }
  return os.str();
}

std::string export_generator(const GeneratorId& id, int n, unsigned p, Ring ring) {
  validate(id, n, p);
  if (ring == Ring::S) return to_json(build_generator(id, n, p)).dump() + "\n";
  return to_json(lift_generator(id, n, p)).dump() + "\n";
}

}  // namespace borel
