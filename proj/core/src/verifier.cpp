#include "liegrade/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "liegrade/error.hpp"
#include "liegrade/galgebra.hpp"
#include "liegrade/prolong.hpp"
#include "liegrade/spencer.hpp"
#include "liegrade/subadjoint.hpp"

namespace liegrade {

namespace {

constexpr std::pair<CheckGroup, const char*> kGroupNames[] = {
    {CheckGroup::Jacobi, "jacobi"},   {CheckGroup::Forms, "forms"},       {CheckGroup::Xvv, "xvv"},
    {CheckGroup::GStructure, "gstructure"}, {CheckGroup::Prolong, "prolong"}, {CheckGroup::Spencer, "spencer"},
    {CheckGroup::Weights, "weights"},
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Records checks as they complete; millis is the time since the previous record.
class Session {
 public:
  Session(VerificationReport& report, const VerifyOptions& options)
      : report_(report), options_(options), last_(std::chrono::steady_clock::now()) {}

  CheckRecord& add(std::string id, Status status, std::string mode = "exact") {
    CheckRecord r;
    r.id = std::move(id);
    r.status = status;
    r.mode = std::move(mode);
    const auto now = std::chrono::steady_clock::now();
    if (options_.timings) r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(now - last_).count();
    last_ = now;
    report_.checks.push_back(std::move(r));
    return report_.checks.back();
  }
  CheckRecord& add(std::string id, bool ok, std::string mode = "exact") {
    return add(std::move(id), ok ? Status::Pass : Status::Fail, std::move(mode));
  }
  void add(const std::string& prefix, const std::vector<CaseCheck>& checks) {
    for (const auto& c : checks) {
      auto& r = add(prefix + c.id, c.ok);
      if (!c.detail.empty()) r.witnesses.push_back(c.detail);
    }
  }
  void primes(const std::vector<std::uint64_t>& ps) { report_.primes.insert(report_.primes.end(), ps.begin(), ps.end()); }
  void note(std::string text) {
    if (std::find(report_.notes.begin(), report_.notes.end(), text) == report_.notes.end())
      report_.notes.push_back(std::move(text));
  }
  void reset_clock() { last_ = std::chrono::steady_clock::now(); }

 private:
  VerificationReport& report_;
  const VerifyOptions& options_;
  std::chrono::steady_clock::time_point last_;
};

bool is_e_series(const SubadjointCase& c) { return c.label.type == DynkinType::E; }

std::string mode_name(SolveMode m) { return to_string(m); }

// --- groups ---------------------------------------------------------------------------

void jacobi_group(Session& s, const SubadjointCase& c) {
  const auto bad = check_jacobi(c.s, 8);
  auto& r = s.add("chevalley.jacobi", bad.empty());
  r.dims["dim_s"] = static_cast<long long>(c.s.dim());
  r.dims["violations"] = static_cast<long long>(bad.size());
  for (const auto& t : bad)
    r.witnesses.push_back(c.s.labels()[t[0]] + "," + c.s.labels()[t[1]] + "," + c.s.labels()[t[2]]);

  bool in_range = c.contact.min_degree() >= -2 && c.contact.max_degree() <= 2;
  const bool ok = in_range && c.contact.dim(2) == 1 && c.contact.dim(-2) == 1 &&
                  check_bracket_additivity(c.s, c.contact);
  auto& g = s.add("contact.grading", ok);
  for (int d = -2; d <= 2; ++d) g.dims["s_" + std::to_string(d)] = static_cast<long long>(c.contact.dim(d));

  const auto lbad = check_jacobi(c.l_table, 8);
  s.add("l.jacobi", lbad.empty()).dims["dim_l"] = static_cast<long long>(c.dim_l());
}

void forms_group(Session& s, const SubadjointCase& c, const CaseDescriptor& desc, const VerifyOptions& opt) {
  s.add("case.", check_case_invariants(c));

  {
    const std::size_t l1 = c.dim_l_part(1);
    const bool ok = desc.dim_V == c.dim_V() && desc.dim_l == c.dim_l() && desc.dim_l1 == l1 &&
                    descriptor_consistent(desc);
    auto& r = s.add("registry.dims", ok);
    r.dims["dim_V"] = static_cast<long long>(c.dim_V());
    r.dims["dim_l"] = static_cast<long long>(c.dim_l());
    r.dims["dim_l1"] = static_cast<long long>(l1);
    if (!ok)
      r.witnesses.push_back("registry expects V=" + std::to_string(desc.dim_V) + " l=" + std::to_string(desc.dim_l) +
                            " l1=" + std::to_string(desc.dim_l1));
  }

  {
    const auto sigma = symplectic_form(c);
    const std::size_t n = sigma.size();
    bool alternating = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) alternating &= sigma[i][j] == -sigma[j][i];
    const Rational det = determinant(sigma);
    const Index v0 = c.v0_local();
    bool hyperplane = true;
    for (int j = 0; j <= 3; ++j)
      for (Index v : c.V_part(j)) hyperplane &= (j == 3) != is_zero(sigma[v0][v]);
    auto& r = s.add("forms.sigma", alternating && !is_zero(det) && hyperplane);
    r.values["det"] = to_string(det);
    if (!hyperplane) r.witnesses.push_back("sigma(v0, .) does not cut out V_0 + V_1 + V_2");
  }

  const auto forms = fundamental_forms(c);
  const auto fr = analyze_forms(c, forms);
  s.add("forms.II_symmetric", fr.II_symmetric);
  s.add("forms.III_symmetric", fr.III_symmetric);
  s.add("forms.beta_compatible", fr.beta_compatible);
  s.add("forms.III_nondegenerate", fr.III_kernel_dim == 0).dims["kernel"] = static_cast<long long>(fr.III_kernel_dim);
  {
    auto& r = s.add("forms.beta_perfect", !is_zero(fr.beta_det));
    r.values["det"] = to_string(fr.beta_det);
    r.dims["size"] = static_cast<long long>(forms.l1.size());
  }

  if (c.label.type == DynkinType::B || c.label.type == DynkinType::D) {
    // The P^1 factor of the Segre product is a line, so II vanishes on its ideal.
    const bool some = std::find(fr.II_vanishes_on_ideal.begin(), fr.II_vanishes_on_ideal.end(), true) !=
                      fr.II_vanishes_on_ideal.end();
    auto& r = s.add("forms.II_line_factor", some);
    r.dims["ideals"] = static_cast<long long>(c.ideals.size());
  }

  const bool surface = c.label == DynkinLabel{DynkinType::B, 3};
  if (!surface) {
    // Sampled points of the closed orbit lie in the base locus of II.
    const auto samples = sample_closed_orbit(c, opt.xvv_budget, opt.seed);
    std::size_t bad = 0;
    for (const auto& b : samples) {
      SparseVector acc;
      for (std::size_t a = 0; a < forms.l1.size(); ++a) {
        const Rational ba = b.at(forms.l1[a]);
        if (is_zero(ba)) continue;
        for (std::size_t a2 = 0; a2 < forms.l1.size(); ++a2) {
          const Rational bb = b.at(forms.l1[a2]);
          if (!is_zero(bb)) acc.add_scaled(forms.II[a][a2], ba * bb);
        }
      }
      bad += acc.empty() ? 0 : 1;
    }
    auto& r = s.add("forms.base_locus_samples", bad == 0);
    r.dims["samples"] = static_cast<long long>(samples.size());
    r.dims["off_locus"] = static_cast<long long>(bad);
  }
  s.note("base locus: only sampled membership Bs(II) contains the closed orbit is checked; "
         "strict inclusion (surface case) and equality (other cases) are unverified");
  s.note("c functional uses the lowest-weight convention: [b, v0] = c(b) v0");
}

void xvv_group(Session& s, const SubadjointCase& c, const VerifyOptions& opt) {
  std::size_t budget = opt.xvv_budget;
  std::vector<std::string> tried;
  XvvCertificate cert;
  while (true) {
    cert = check_xvv(c, sample_closed_orbit(c, budget, opt.seed));
    tried.push_back(std::to_string(budget) + ":K=" + std::to_string(cert.kernel_dim));
    if (cert.status == XvvStatus::Pass || budget == 0 || budget * 2 > opt.xvv_max_budget) break;
    budget *= 2;
  }
  auto& r = s.add("xvv.certificate", cert.status == XvvStatus::Pass ? Status::Pass : Status::Inconclusive);
  r.dims["budget"] = static_cast<long long>(budget);
  r.dims["samples"] = static_cast<long long>(cert.samples);
  r.dims["kernel"] = static_cast<long long>(cert.kernel_dim);
  r.dims["dim_l_minus_1"] = static_cast<long long>(c.dim_l_part(-1));
  if (tried.size() > 1) r.witnesses.push_back("escalation " + join(tried, " "));
}

void gstructure_group(Session& s, const SubadjointCase& c, const GAlgebra& g, const VerifyOptions& opt) {
  s.add("", check_g_invariants(c, g));
  s.add("", verify_structure_identities(g));
  const auto ex = conjugation_expansion_check(g, opt.expansion_trials, opt.seed);
  auto& r = s.add("identity.e_st_expansion",
                  ex.failures == 0 && ex.s0_ok && ex.s1_ok && ex.eight_terms_ok && ex.high_order_zero);
  r.dims["trials"] = static_cast<long long>(ex.trials);
  r.dims["failures"] = static_cast<long long>(ex.failures);
}

bool too_big(const GAlgebra& g, SolveMode mode, const VerifyOptions& opt, std::size_t* rows) {
  std::size_t worst = 0;
  for (int k : {-1, -2}) worst = std::max(worst, spencer_spaces(g, k).dim_C2());
  *rows = worst;
  return mode == SolveMode::Exact && worst > opt.exact_row_limit;
}

Status proven_status(bool ok, bool proven) {
  if (!ok) return proven ? Status::Fail : Status::Inconclusive;
  return proven ? Status::Pass : Status::Inconclusive;
}

void prolong_group(Session& s, const SubadjointCase& c, const GAlgebra& g, SolveMode mode, const ModpConfig& modp,
                   const VerifyOptions& opt) {
  std::size_t rows = 0;
  if (too_big(g, mode, opt, &rows)) {
    auto& r = s.add("prolong.main", Status::Skipped, mode_name(mode));
    r.dims["rows"] = static_cast<long long>(rows);
    r.witnesses.push_back("exact system exceeds the row limit; rerun with --mode modp-certify");
    return;
  }
  const auto data = g_prolong_input(g);
  const auto problems = validate_input(data.input);
  {
    auto& r = s.add("prolong.input", problems.empty());
    r.witnesses = problems;
    r.dims["dim_g_plus"] = static_cast<long long>(data.plus.size());
    r.dims["dim_g0"] = static_cast<long long>(data.g0.size());
  }

  ProlongOptions po;
  po.k_max = 2;
  po.mode = mode;
  po.modp = modp;
  po.hints[1] = data.ad_minus_one;
  const auto res = prolongation(data.input, po);
  const std::size_t lm1 = c.dim_l_part(-1);
  const auto& L1 = res.levels.at(0);
  const auto& L2 = res.levels.at(1);
  s.primes(L1.primes);
  s.primes(L2.primes);

  {
    auto& r = s.add("prolong.p_minus_1", proven_status(L1.dim == lm1, L1.proven), mode_name(L1.mode));
    r.dims["dim_p_minus_1"] = static_cast<long long>(L1.dim);
    r.dims["dim_l_minus_1"] = static_cast<long long>(lm1);
    r.dims["unknowns"] = static_cast<long long>(L1.unknowns);
    r.dims["equations"] = static_cast<long long>(L1.equations);
  }
  {
    auto& r = s.add("prolong.p_minus_2", proven_status(L2.dim == 0, L2.proven), mode_name(L2.mode));
    r.dims["dim_p_minus_2"] = static_cast<long long>(L2.dim);
    r.dims["unknowns"] = static_cast<long long>(L2.unknowns);
    r.dims["equations"] = static_cast<long long>(L2.equations);
  }
  {
    // ad: g_{-1} -> Hom(g_+, g)_{-1}: images solve the equations and are independent.
    auto& r = s.add("prolong.ad_injective", L1.hints_valid && L1.hint_count == g.part(-1).size());
    r.dims["dim_g_minus_1"] = static_cast<long long>(g.part(-1).size());
    r.dims["independent_solutions"] = static_cast<long long>(L1.hints_valid ? L1.hint_count : 0);
  }
  s.add("prolong.residual", L1.residual_zero && L2.residual_zero);
  s.add("prolong.monotone", res.monotone);

  // l_{-1} is the first prolongation of l_0 + l_1; the second counts the P^1-type ideals.
  ProlongOptions lopt;
  lopt.k_max = 2;
  const auto lres = prolongation(l_prolong_input(c), lopt);
  std::size_t line_ideals = 0;
  for (std::size_t i = 0; i < c.ideals.size(); ++i) {
    std::size_t l1 = 0;
    for (Index a : c.l_part(1)) {
      const IntVector root = c.l_root(a);
      l1 += std::any_of(c.ideals[i].begin(), c.ideals[i].end(), [&](int node) { return root[node] != 0; }) ? 1 : 0;
    }
    line_ideals += l1 == 1 ? 1 : 0;
  }
  {
    auto& r = s.add("prolong.l_first", lres.dims.at(1) == lm1);
    r.dims["dim_1"] = static_cast<long long>(lres.dims.at(1));
    r.dims["dim_2"] = static_cast<long long>(lres.dims.at(2));
  }
  s.add("prolong.l_second", lres.dims.at(2) == line_ideals).dims["line_ideals"] = static_cast<long long>(line_ideals);

  if (c.ideals.size() == 2) {
    const auto ds = direct_sum_check(l_prolong_input(c, 0), l_prolong_input(c, 1), 2);
    auto& r = s.add("prolong.direct_sum", ds.ok);
    for (const auto& [k, d] : ds.dims_sum) r.dims["sum_" + std::to_string(k)] = static_cast<long long>(d);
  }
}

void spencer_group(Session& s, const GAlgebra& g, SolveMode mode, const ModpConfig& modp,
                   const VerifyOptions& opt) {
  std::size_t rows = 0;
  if (too_big(g, mode, opt, &rows)) {
    auto& r = s.add("spencer.main", Status::Skipped, mode_name(mode));
    r.dims["rows"] = static_cast<long long>(rows);
    r.witnesses.push_back("exact system exceeds the row limit; rerun with --mode modp-certify");
    return;
  }
  const std::size_t gm1 = g.part(-1).size();

  // Degree support: Hom(L^2 g_+, g)_k = 0 once 2 + k < -1, i.e. k <= -7 for the 5-grading.
  {
    bool ok = true;
    std::vector<std::string> w;
    for (int k = std::min(opt.kmin, -7); k <= -7; ++k) {
      const auto sp = spencer_spaces(g, k);
      if (sp.dim_C2() != 0) {
        ok = false;
        w.push_back("k=" + std::to_string(k));
      }
    }
    s.add("spencer.support", ok).witnesses = w;
  }

  {
    const auto sp = spencer_spaces(g, -1);
    const auto D = spencer_differential(g, sp);
    bool closed = true;
    for (Index x : g.part(-1)) closed &= D.multiply(ad_cochain(g, sp, x)).empty();
    s.add("spencer.ad_closed", closed).dims["dim_g_minus_1"] = static_cast<long long>(gm1);
  }

  for (int k = -1; k >= opt.kmin; --k) {
    const auto q = q_dimension(g, k, mode, modp);
    s.primes(q.primes);
    std::size_t expect_c1 = 0;
    for (int d = 1; d <= 3; ++d)
      if (d + k >= -1) expect_c1 += g.part(d).size() * g.part(d + k).size();
    bool ok = q.dim_C1 == expect_c1 && q.q <= q.dim_C2;
    Status st = ok ? Status::Pass : Status::Fail;
    if (k == -1) {
      // ker d on C^{-1,1} is the first prolongation: rank = dim C^{-1,1} - dim g_{-1}. The mod-p
      // rank never exceeds the rational one, and ad g_{-1} already gives the lower bound on
      // the kernel, so hitting the value is a proof in every mode.
      ok &= q.rank == q.dim_C1 - gm1;
      st = ok ? Status::Pass : (q.mode == SolveMode::Exact || q.certified ? Status::Fail : Status::Inconclusive);
    }
    auto& r = s.add("spencer.Q" + std::to_string(k), st, mode_name(q.mode));
    r.dims["dim_C1"] = static_cast<long long>(q.dim_C1);
    r.dims["dim_C2"] = static_cast<long long>(q.dim_C2);
    r.dims["rank"] = static_cast<long long>(q.rank);
    r.dims["dim_Q"] = static_cast<long long>(q.q);
    if (q.probabilistic) r.values["probabilistic"] = "1";
  }

  const auto pp = partial_prime_checks(g, mode, modp);
  {
    auto& r = s.add("spencer.partial_prime", pp.surjective && pp.injective && pp.perfect, mode_name(pp.mode));
    r.dims["dim_Hom_V2_l1"] = static_cast<long long>(pp.dim_hom_V2_l1);
    r.dims["dim_Hom_L2V2_V3"] = static_cast<long long>(pp.dim_L2V2_V3);
    r.dims["rank_d1"] = static_cast<long long>(pp.rank_d1);
    r.dims["nullity_d2"] = static_cast<long long>(pp.nullity_d2);
    r.values["pairing_det"] = to_string(pp.pairing_det);
  }
}

void weights_group(Session& s, const SubadjointCase& c, const GAlgebra& g, const VerifyOptions& opt) {
  for (const auto& chk : cI_component_checks(c, g)) {
    if (chk.id == "cI.omega_star") {
      auto& r = s.add("weights.omega_star", chk.ok);
      r.values["cI"] = chk.detail;
    } else {
      auto& r = s.add("weights." + chk.id, chk.ok);
      r.values["set"] = chk.detail;
    }
  }
  for (int k = -1; k >= opt.kmin; --k) {
    const auto t = summand_cI_table(c, g, k);
    auto& r = s.add("weights.table" + std::to_string(k), t.table_ok && t.verdict_ok && t.closure_ok);
    r.dims["dim_C2"] = static_cast<long long>(t.dim_C2);
    for (const auto& row : t.rows) {
      std::vector<std::string> vals;
      for (const auto& v : row.values) vals.push_back(to_string(v));
      r.values[family_name(row.family)] = "{" + join(vals, ",") + "}";
    }
    for (const auto& o : t.offending) r.witnesses.push_back(o);
    if (!t.verdict_ok) r.witnesses.push_back("R_k = " + join(Rk_pieces(k), " + "));
  }
  s.note("weight table verified at weight level per proof; module-level decomposition not computed");
}

}  // namespace

std::string to_string(CheckGroup g) {
  for (const auto& [k, name] : kGroupNames)
    if (k == g) return name;
  return "unknown";
}

CheckSet all_checks() {
  CheckSet out;
  for (const auto& [k, name] : kGroupNames) out.insert(k);
  return out;
}

CheckSet parse_check_set(std::string_view text) {
  CheckSet out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      out = all_checks();
      continue;
    }
    bool found = false;
    for (const auto& [k, name] : kGroupNames) {
      if (item == name) {
        out.insert(k);
        found = true;
      }
    }
    if (!found) throw Error("unknown check group '" + item + "'");
  }
  return out;
}

std::string library_version() { return LIEGRADE_VERSION; }

std::vector<std::string> active_case_ids(const RegistryConfig& config) {
  std::vector<std::string> out;
  for (const auto& d : list_cases(config))
    if (!d.excluded) out.push_back(d.case_id);
  return out;
}

VerificationReport run(const std::string& case_id, const CheckSet& checks, const VerifyOptions& options) {
  const auto desc = find_case(case_id);
  if (!desc) throw InvalidLabel("not a registry case: '" + case_id + "'");
  if (desc->excluded) throw ExcludedCase("excluded case: " + desc->reason);

  VerificationReport rep;
  rep.version = library_version();
  rep.case_id = desc->case_id;
  rep.seed = options.seed;
  if (checks.empty()) {
    finalize(rep);
    return rep;
  }

  Session s(rep, options);
  const auto c = build_case(desc->s_label);
  const bool e_series = is_e_series(c);
  const SolveMode mode = options.mode.value_or(e_series ? SolveMode::ModPCertify : SolveMode::Exact);
  ModpConfig modp;
  modp.seed += options.seed;

  auto guarded = [&](CheckGroup group, const std::function<void()>& body) {
    if (!checks.count(group)) return;
    s.reset_clock();
    try {
      body();
    } catch (const std::exception& e) {
      s.add(to_string(group) + ".error", Status::Fail).witnesses.push_back(e.what());
    }
  };

  guarded(CheckGroup::Jacobi, [&] { jacobi_group(s, c); });
  guarded(CheckGroup::Forms, [&] { forms_group(s, c, *desc, options); });
  guarded(CheckGroup::Xvv, [&] { xvv_group(s, c, options); });

  const bool need_g = checks.count(CheckGroup::GStructure) || checks.count(CheckGroup::Prolong) ||
                      checks.count(CheckGroup::Spencer) || checks.count(CheckGroup::Weights);
  if (need_g) {
    const auto g = build_g(c);
    guarded(CheckGroup::GStructure, [&] { gstructure_group(s, c, g, options); });
    const bool gated = e_series && !options.heavy;
    for (auto group : {CheckGroup::Prolong, CheckGroup::Spencer}) {
      guarded(group, [&] {
        if (gated) {
          s.add(to_string(group) + ".main", Status::Skipped, mode_name(mode))
              .witnesses.push_back("E-series solver runs need --heavy");
        } else if (group == CheckGroup::Prolong) {
          prolong_group(s, c, g, mode, modp, options);
        } else {
          spencer_group(s, g, mode, modp, options);
        }
      });
    }
    guarded(CheckGroup::Weights, [&] { weights_group(s, c, g, options); });
  }

  std::sort(rep.primes.begin(), rep.primes.end());
  rep.primes.erase(std::unique(rep.primes.begin(), rep.primes.end()), rep.primes.end());
  finalize(rep);
  return rep;
}

std::vector<VerificationReport> run_many(const std::vector<std::string>& case_ids, const CheckSet& checks,
                                         const VerifyOptions& options, unsigned jobs) {
  std::vector<VerificationReport> out(case_ids.size());
  std::vector<std::exception_ptr> errors(case_ids.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < case_ids.size();) {
      try {
        out[i] = run(case_ids[i], checks, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(case_ids.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace liegrade
