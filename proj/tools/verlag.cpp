// verlag: transfer maps, section cohomology and theorem checks from the
// command line.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "verlagerung/verlagerung.hpp"

using namespace vlg;
using json = nlohmann::ordered_json;

namespace {

struct Options {
  bool json_output = false;
  std::string output;
  std::size_t max_cosets = kDefaultMaxCosets;
  std::size_t max_order = kDefaultMaxOrder;
  std::string catalog = "finite-small";
};

json num(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json num(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return num(Integer(c.get_num()));
  return to_string(c);
}

json num(std::size_t n) { return n; }

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(num(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json group_json(const FgAbGroup& A) { return A.to_string(); }

json item(const std::string& entry, const std::string& subgroup, const std::string& check) {
  json j;
  j["entry"] = entry;
  j["subgroup"] = subgroup;
  j["check"] = check;
  j["verdict"] = to_string(Verdict::fail);
  return j;
}

void set_verdict(json& j, Verdict v) { j["verdict"] = to_string(v); }

// ---- per-pair checks ---------------------------------------------------------

std::vector<json> check_thm_a(const std::string& entry, const std::string& label, const GroupPair& P) {
  std::vector<json> out;
  for (const auto& s : quotient_generators(P)) {
    json j = item(entry, label, "thm-a");
    j["index"] = P.index();
    j["generator"] = P.format(s);
    auto r = verify_kernel_is_augmentation(P, s);
    set_verdict(j, r.verdict);
    j["kernel_of_inclusion"] = group_json(r.kernel);
    j["augmentation_image"] = group_json(r.augmentation);
    j["subgroups_equal"] = r.equal;
    j["c1_trivial"] = r.c1_trivial;
    if (r.commutators) {
      j["derived_order"] = r.commutators->derived_order;
      j["commutator_product_size"] = r.commutators->product_size;
      j["commutator_product_holds"] = r.commutators->holds;
    }
    out.push_back(std::move(j));
  }
  return out;
}

json check_thm_c(const std::string& entry, const std::string& label, const GroupPair& P) {
  json j = item(entry, label, "thm-c");
  auto r = verify_kernel_cokernel(P);
  set_verdict(j, r.verdict);
  j["index"] = P.index();
  if (r.verdict == Verdict::hypothesis_not_met) {
    j["reason"] = "abelianization of the subgroup is infinite";
    return j;
  }
  j["tk_order"] = num(r.tk_order);
  j["tc_order"] = num(r.tc_order);
  j["identity_holds"] = r.identity;
  j["euler_characteristic"] = num(r.euler_characteristic);
  return j;
}

json check_thm_d(const std::string& entry, const std::string& label, const GroupPair& P) {
  json j = item(entry, label, "thm-d");
  auto r = verify_rank_formula(P);
  set_verdict(j, r.verdict);
  j["index"] = P.index();
  if (r.verdict == Verdict::hypothesis_not_met) {
    j["reason"] = "index is not prime or subgroup is not normal";
    return j;
  }
  j["tf_G"] = r.tf_G;
  j["tf_U"] = r.tf_U;
  j["ratio"] = num(r.ratio);
  j["log_p_ratio"] = r.log_ratio ? json(*r.log_ratio) : json("not integral");
  j["formula_holds"] = r.formula;
  j["herbrand"] = num(r.herbrand);
  j["herbrand_is_p_over_ratio"] = r.herbrand_matches;
  return j;
}

json check_thm_b(const std::string& entry, const std::string& label, const GroupPair& P) {
  json j = item(entry, label, "thm-b");
  auto r = verify_permutation_module(P, *P.quotient_generator());
  set_verdict(j, r.verdict);
  j["index"] = P.index();
  json secs = json::array();
  for (std::size_t k = 0; k < r.sections.size(); ++k) {
    json s;
    s["index_in_G"] = r.sections[k].index_in_G;
    s["index_over_U"] = r.sections[k].index_over_U;
    s["abelianization"] = group_json(r.sections[k].abelianization);
    if (k < r.h1_zero.size()) s["h1_zero"] = static_cast<bool>(r.h1_zero[k]);
    secs.push_back(s);
  }
  j["sections"] = secs;
  if (r.verdict == Verdict::hypothesis_not_met) j["reason"] = "an intermediate abelianization has torsion";
  if (r.multiplicities) j["multiplicities"] = {r.multiplicities->r, r.multiplicities->s, r.multiplicities->t};
  return j;
}

json check_mackey(const std::string& entry, const std::string& label, const GroupPair& P) {
  json j = item(entry, label, "mackey");
  auto X = ab_datum(P);
  auto valid = validate_datum(X).valid();
  auto S = section_cohomology(X);
  auto six = six_term_check(X);
  auto sec = verify_section_groups(P);
  auto eu = verify_euler_ratio(P);
  j["index"] = P.index();
  j["c0"] = group_json(S.c0);
  j["c1"] = group_json(S.c1);
  j["k0"] = group_json(S.k0);
  j["k1"] = group_json(S.k1);
  j["datum_valid"] = valid;
  j["six_term_exact"] = six.exact();
  j["chi"] = num(eu.chi);
  j["ratio"] = num(eu.ratio);
  j["herbrand"] = num(eu.herbrand);
  j["c1_trivial"] = sec.c1_trivial;
  j["c0_cyclic_of_index_order"] = sec.c0_cyclic_of_index_order;
  j["chi_times_index_is_ratio"] = eu.chi_times_index_is_ratio;
  j["chi_times_herbrand_is_one"] = eu.chi_times_herbrand_is_one;
  set_verdict(j, verdict_of(valid && six.exact() && sec.verdict == Verdict::pass && eu.verdict == Verdict::pass));
  return j;
}

json check_suzuki(const std::string& entry, const std::string& label, const GroupPair& P) {
  json j = item(entry, label, "suzuki");
  auto r = verify_index_divides_kernel(P);
  set_verdict(j, r.verdict);
  j["index"] = r.index;
  j["tk_order"] = num(r.tk_order);
  return j;
}

json transfer_record(const std::string& entry, const std::string& label, const GroupPair& P) {
  json j = item(entry, label, "transfer");
  std::mt19937_64 rng(0x5eed);
  auto cons = verify_transfer_consistency(P, rng);
  j["backend"] = to_string(P.backend());
  j["index"] = P.index();
  j["normal"] = P.is_normal();
  j["abG"] = group_json(P.abG());
  j["abU"] = group_json(P.abU());
  j["tf_G"] = P.abG().free_rank();
  j["tf_U"] = P.abU().free_rank();
  j["transfer"] = matrix_json(P.transfer().matrix());
  j["inclusion"] = matrix_json(P.inclusion().matrix());
  auto tk = transfer_kernel(P);
  j["tk"] = group_json(tk);
  bool ok = cons.verdict == Verdict::pass && tk.is_finite();
  const Integer n(static_cast<unsigned long>(P.index()));
  if (tk.is_finite()) j["hs_multiplier"] = num(rational(tk.order(), n));
  if (P.is_normal()) {
    auto t = summarize_transfer(P);
    j["tc"] = group_json(t.tc);
    j["tk_order"] = num(t.tk_order);
    j["tc_order"] = num(t.tc_order);
    j["ratio"] = num(t.ratio);
    j["tk_in_torsion"] = t.tk_in_torsion;
    j["tc_killed_by_index"] = t.tc_killed_by_index;
    ok = ok && t.tk_in_torsion && t.tc_killed_by_index;
  } else {
    j["tc"] = "skipped: subgroup is not normal";
  }
  j["composition_law"] = cons.composition_law;
  j["transversal_independent"] = cons.transversal_independent;
  set_verdict(j, verdict_of(ok));
  return j;
}

// ---- suites -------------------------------------------------------------------

const std::vector<std::string> kSuites{"thm-a", "thm-c", "thm-d", "thm-b", "mackey", "suzuki"};

std::vector<LabelledPair> cocyclic_for(const CatalogEntry& e, const Options& o) {
  if (e.backend == Backend::perm) return cocyclic_pairs(e);
  std::vector<LabelledPair> out;
  for (auto& p : declared_pairs(e, o.max_cosets))
    if (p.pair.is_normal() && p.pair.is_quotient_cyclic()) out.push_back(std::move(p));
  return out;
}

std::vector<json> run_suite(const std::string& suite, const CatalogEntry& e, const Options& o) {
  std::vector<json> out;
  if (suite == "suzuki") {
    if (e.backend != Backend::perm) return out;
    for (const auto& p : abelian_quotient_pairs(e)) out.push_back(check_suzuki(e.name, p.label, p.pair));
    return out;
  }
  for (const auto& p : cocyclic_for(e, o)) {
    if (suite == "thm-a") {
      for (auto& j : check_thm_a(e.name, p.label, p.pair)) out.push_back(std::move(j));
    } else if (suite == "thm-c") {
      out.push_back(check_thm_c(e.name, p.label, p.pair));
    } else if (suite == "thm-d") {
      if (is_prime(p.pair.index())) out.push_back(check_thm_d(e.name, p.label, p.pair));
    } else if (suite == "thm-b") {
      out.push_back(check_thm_b(e.name, p.label, p.pair));
    } else if (suite == "mackey") {
      out.push_back(check_mackey(e.name, p.label, p.pair));
    }
  }
  return out;
}

// Runs f, turning engine limits into an inconclusive record.
template <class F>
void guarded(std::vector<json>& items, const std::string& entry, const std::string& check, F&& f) {
  try {
    for (auto& j : f()) items.push_back(std::move(j));
  } catch (const CosetLimitExceeded& ex) {
    json j = item(entry, "", check);
    set_verdict(j, Verdict::inconclusive);
    j["reason"] = ex.what();
    items.push_back(std::move(j));
  } catch (const SizeOverflow& ex) {
    json j = item(entry, "", check);
    set_verdict(j, Verdict::inconclusive);
    j["reason"] = ex.what();
    items.push_back(std::move(j));
  }
}

void apply_caps(std::vector<CatalogEntry>& entries, const Options& o) {
  for (auto& e : entries)
    if (e.backend == Backend::perm) e.perm.set_order_cap(o.max_order);
}

// ---- output -------------------------------------------------------------------

void render_text(std::ostream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      os << pad << k << ":\n";
      render_text(os, v, indent + 2);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << pad << k << ":\n";
      for (const auto& el : v) {
        bool first = true;
        for (const auto& [k2, v2] : el.items()) {
          os << pad << (first ? "- " : "  ") << k2 << ": " << (v2.is_string() ? v2.get<std::string>() : v2.dump())
             << '\n';
          first = false;
        }
      }
    } else {
      os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

struct Report {
  std::string command;
  std::vector<json> items;
  json extra;  // command-specific fields
};

int emit(const Report& r, const Options& o, std::chrono::steady_clock::time_point start) {
  std::map<std::string, std::size_t> counts{{"pass", 0}, {"fail", 0}, {"hypothesis-not-met", 0}, {"inconclusive", 0}};
  for (const auto& it : r.items) ++counts[it["verdict"].get<std::string>()];
  json doc;
  doc["tool"] = "verlag";
  doc["version"] = VERLAGERUNG_VERSION;
  doc["command"] = r.command;
  if (!r.extra.is_null())
    for (const auto& [k, v] : r.extra.items()) doc[k] = v;
  doc["items"] = r.items;
  json summary;
  for (const char* k : {"pass", "fail", "hypothesis-not-met", "inconclusive"}) summary[k] = counts[k];
  summary["total"] = r.items.size();
  doc["summary"] = summary;
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream body;
  if (o.json_output) {
    json timed = doc;
    timed["wall_time_ms"] = ms;
    body << timed.dump(2) << '\n';
  } else {
    render_text(body, doc, 0);
    body << "wall_time_ms: " << ms << '\n';
  }
  if (o.output.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw PreconditionError("cannot write " + o.output);
    out << body.str();
  }
  return counts["fail"] ? 1 : 0;
}

std::string join_command(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) s += (i > 1 ? " " : "") + std::string(argv[i]);
  return s;
}

// ---- commands -----------------------------------------------------------------

CatalogEntry resolve_group(const std::string& what, const Options& o) {
  if (std::filesystem::is_regular_file(what)) return load_group_spec(what);
  for (auto& e : resolve_catalog(o.catalog))
    if (e.name == what) return e;
  throw PreconditionError("'" + what + "' is neither a group file nor an entry of catalog " + o.catalog);
}

Report cmd_analyze(const std::string& group, const std::string& label, const Options& o) {
  Report r;
  auto e = resolve_group(group, o);
  if (e.backend == Backend::perm) e.perm.set_order_cap(o.max_order);
  auto P = e.pair(label, o.max_cosets);
  r.items.push_back(transfer_record(e.name, label, P));
  if (P.is_normal() && P.is_quotient_cyclic()) {
    for (auto& j : check_thm_a(e.name, label, P)) r.items.push_back(std::move(j));
    r.items.push_back(check_thm_c(e.name, label, P));
    if (is_prime(P.index())) r.items.push_back(check_thm_d(e.name, label, P));
    r.items.push_back(check_thm_b(e.name, label, P));
    r.items.push_back(check_mackey(e.name, label, P));
  }
  return r;
}

Report cmd_verify(const std::string& suite, const Options& o) {
  if (suite != "all" && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw PreconditionError("unknown suite '" + suite + "'");
  Report r;
  auto entries = resolve_catalog(o.catalog);
  apply_caps(entries, o);
  std::vector<std::string> suites = suite == "all" ? kSuites : std::vector<std::string>{suite};
  for (const auto& e : entries)
    for (const auto& s : suites) guarded(r.items, e.name, s, [&] { return run_suite(s, e, o); });
  r.extra["catalog"] = o.catalog;
  r.extra["suite"] = suite;
  return r;
}

Report cmd_herbrand(const std::string& file) {
  Report r;
  auto X = load_module(file);
  json j = item(file, "", "herbrand");
  j["n"] = X.order();
  j["module"] = group_json(X.module());
  j["tate_h0"] = group_json(X.tate_h0());
  j["tate_hm1"] = group_json(X.tate_hm1());
  j["herbrand"] = num(X.herbrand());
  j["invariant_rank"] = X.invariant_rank();
  j["h1_vanishes"] = X.h1_vanishes();
  Verdict v = Verdict::pass;
  if (is_prime(X.order())) {
    auto lh = verify_log_herbrand(X);
    j["log_p_herbrand"] = lh.log_h;
    j["rank_identity"] = lh.rank_identity;
    j["torsion_herbrand_is_one"] = lh.torsion_trivial_h;
    v = verdict_of(lh.holds());
  }
  set_verdict(j, v);
  r.items.push_back(j);
  return r;
}

Report cmd_decompose(const std::string& file, std::size_t p) {
  Report r;
  auto X = load_module(file);
  if (p != 0 && p != X.order()) throw PreconditionError("module has n=" + std::to_string(X.order()) + ", not " + std::to_string(p));
  auto d = diederichsen_multiplicities(X);
  json j = item(file, "", "decompose");
  j["p"] = X.order();
  j["rank"] = X.module().free_rank();
  j["invariant_rank"] = X.invariant_rank();
  j["herbrand"] = num(X.herbrand());
  j["r"] = d.r;
  j["s"] = d.s;
  j["t"] = d.t;
  j["permutation_module"] = d.s == 0;
  set_verdict(j, Verdict::pass);
  r.items.push_back(j);
  return r;
}

Report cmd_mackey(const std::string& file) {
  Report r;
  auto X = load_datum(file);
  auto v = validate_datum(X);
  if (!v.valid()) {
    std::string msg = "invalid datum:";
    for (const auto& s : v.violations()) msg += " [" + s + "]";
    throw PreconditionError(msg);
  }
  auto S = section_cohomology(X);
  auto six = six_term_check(X);
  json j = item(file, "", "mackey");
  j["n"] = X.order();
  j["c0"] = group_json(S.c0);
  j["c1"] = group_json(S.c1);
  j["k0"] = group_json(S.k0);
  j["k1"] = group_json(S.k1);
  j["tate_h0"] = group_json(S.h0);
  j["tate_hm1"] = group_json(S.hm1);
  json exact = json::array();
  for (bool b : six.exact_at) exact.push_back(b);
  j["six_term_exact_at"] = exact;
  auto chi = euler_char(S);
  auto h = X.X1.herbrand();
  j["chi"] = num(chi);
  j["herbrand"] = num(h);
  j["chi_times_herbrand"] = num(chi * h);
  set_verdict(j, verdict_of(six.exact() && chi * h == 1));
  r.items.push_back(j);
  return r;
}

json entry_json(const CatalogEntry& e) {
  json j;
  j["name"] = e.name;
  j["backend"] = to_string(e.backend);
  if (e.backend == Backend::perm) {
    j["degree"] = e.perm.degree();
    j["order"] = e.perm.order();
  } else {
    j["presentation"] = e.fp.to_string();
  }
  json subs = json::array();
  for (const auto& s : e.subgroups) subs.push_back(s.label);
  j["subgroups"] = subs;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

// Every built-in catalog, or only the one named by --catalog.
Report cmd_catalog_list(const Options& o, bool only_selected) {
  Report r;
  std::vector<std::string> names = only_selected ? std::vector<std::string>{o.catalog} : catalog_names();
  json cats = json::array();
  for (const auto& name : names) {
    json c;
    c["name"] = name;
    json entries = json::array();
    for (const auto& e : resolve_catalog(name)) entries.push_back(entry_json(e));
    c["entries"] = entries;
    cats.push_back(c);
  }
  r.extra["catalogs"] = cats;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Transfer maps, section cohomology and theorem checks for finite and finitely presented groups"};
  app.require_subcommand(1);
  // global flags are accepted after the subcommand too
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json_output, "Emit JSON instead of text");
  app.add_option("--output", o.output, "Write the report to this file");
  app.add_option("--max-cosets", o.max_cosets, "Coset enumeration limit")->check(CLI::PositiveNumber);
  app.add_option("--max-order", o.max_order, "Permutation group order limit")->check(CLI::PositiveNumber);
  app.add_option("--catalog", o.catalog, "Built-in catalog name or directory of .grp files");

  std::string group, label, suite, file;
  std::size_t p = 0;
  auto* analyze = app.add_subcommand("analyze", "Transfer and checks for one group and subgroup");
  analyze->add_option("group", group, "Group file, or entry name in --catalog")->required();
  analyze->add_option("subgroup", label, "Subgroup label")->required();
  auto* verify = app.add_subcommand("verify", "Sweep a theorem suite over a catalog");
  verify->add_option("suite", suite, "thm-a, thm-c, thm-d, thm-b, mackey, suzuki or all")->required();
  verify->add_option("catalog", o.catalog, "Catalog (same as --catalog)");
  auto* herbrand = app.add_subcommand("herbrand", "Tate groups and Herbrand quotient of a module file");
  herbrand->add_option("module", file, "Module file")->required();
  auto* decompose = app.add_subcommand("decompose", "Trivial, augmentation and regular multiplicities of a lattice");
  decompose->add_option("module", file, "Module file")->required();
  decompose->add_option("p", p, "Expected prime order");
  auto* mackey = app.add_subcommand("mackey", "Section cohomology of a datum file");
  mackey->add_option("datum", file, "Datum file")->required();
  auto* catalog = app.add_subcommand("catalog", "Catalog operations");
  auto* list = catalog->add_subcommand("list", "List catalog entries");
  catalog->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Report r;
  try {
    if (*analyze)
      r = cmd_analyze(group, label, o);
    else if (*verify)
      r = cmd_verify(suite, o);
    else if (*herbrand)
      r = cmd_herbrand(file);
    else if (*decompose)
      r = cmd_decompose(file, p);
    else if (*mackey)
      r = cmd_mackey(file);
    else if (*list)
      r = cmd_catalog_list(o, app.count("--catalog") > 0);
    r.command = join_command(argc, argv);
    return emit(r, o, start);
  } catch (const Error& e) {
    json err;
    err["tool"] = "verlag";
    err["command"] = join_command(argc, argv);
    err["error"] = e.what();
    if (o.json_output)
      std::cerr << err.dump(2) << '\n';
    else
      std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
