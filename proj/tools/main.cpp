#include "hyperval/errors.hpp"
#include "hyperval/finite.hpp"
#include "hyperval/hahn.hpp"
#include "hyperval/quotient.hpp"
#include "hyperval/reconstruct.hpp"
#include "hyperval/rvsort.hpp"
#include "hyperval/tower.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hv;
using ojson = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t budget = 4;
  std::size_t samples = 200;
  std::string prec;
  bool json = false;

  ojson to_json() const {
    return {{"seed", seed}, {"budget", budget}, {"samples", samples}, {"prec", prec}, {"output", json ? "json" : "text"}};
  }
  Scope scope() const { return Scope::sampled(samples, seed); }
};

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InsufficientPrecision:
    case ErrorCode::IndistinguishableFromZero:
    case ErrorCode::Undetermined: return 3;
    case ErrorCode::Usage:
    case ErrorCode::Syntax:
    case ErrorCode::UnknownVariable: return 2;
    default: return 1;
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

void print_report(const Report& r) {
  std::cout << r.subject << "\n";
  for (const auto& a : r.results) {
    std::cout << "  " << a.axiom << ": " << status_name(a.status) << " (" << a.trials << " trials)";
    if (a.witness) std::cout << "  " << *a.witness;
    std::cout << "\n";
  }
}

int emit(const RunConfig& cfg, const std::vector<Report>& reports, ojson extra = {}) {
  bool ok = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
  if (cfg.json) {
    ojson j = extra.is_null() ? ojson::object() : extra;
    j["config"] = cfg.to_json();
    j["reports"] = ojson::array();
    for (const auto& r : reports) j["reports"].push_back(r.to_json());
    j["passed"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports) print_report(r);
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? 0 : 1;
}

Tower load_tower(const std::string& spec, std::size_t budget) {
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Syntax, spec + ": " + e.what());
    }
    if (!j.contains("budget")) j["budget"] = budget;
    return tower_from_json(j);
  }
  return builtin_tower(spec, budget);
}

std::vector<std::size_t> parse_indices(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoul(trim(tok)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::Usage, "bad subgroup element '" + tok + "'");
    }
  }
  return out;
}

struct Structure {
  HandlePtr H;
  SortPtr sort;
  LimitPtr limit;
  bool exhaustive = false;
};

Structure build_structure(const std::vector<std::string>& a, bool trivial, const RunConfig& cfg) {
  if (a.empty()) throw Error(ErrorCode::Usage, "missing structure");
  const std::string& kind = a[0];
  auto need = [&](std::size_t n) {
    if (a.size() != n) throw Error(ErrorCode::Usage, kind + " takes " + std::to_string(n - 1) + " argument(s)");
  };
  Structure s;
  FinitePtr fin;
  if (kind == "k" || kind == "s") {
    need(1);
    fin = kind == "k" ? krasner_K() : krasner_S();
  } else if (kind == "fq-factor") {
    need(3);
    std::uint32_t p = 0;
    try {
      p = static_cast<std::uint32_t>(std::stoul(a[1]));
    } catch (const std::exception&) {
      throw Error(ErrorCode::Usage, "bad prime '" + a[1] + "'");
    }
    fin = factor_hyperfield(*field_as_hyperfield(BaseField::prime(p)), parse_indices(a[2]));
  } else if (kind == "quotient") {
    need(3);
    GroundSpec g = parse_ground(a[1]);
    s.H = make_quotient(g, parse_segment(a[2], g.rank()));
  } else if (kind == "rv") {
    need(3);
    auto R = std::make_shared<SplitSort>(parse_sequence_structure(a[1], a[2]));
    s.sort = R;
    s.H = R->handle();
  } else if (kind == "limit") {
    need(2);
    Tower T = load_tower(a[1], cfg.budget);
    s.limit = limit_hyperfield(T);
    s.H = s.limit;
    const InitialSegment& u = *T.union_norm;
    s.sort = std::make_shared<HyperfieldSort>(s.limit, ConvexSubgroup{u.rank(), u.k()});
  } else {
    throw Error(ErrorCode::Usage, "unknown structure '" + kind + "' (k | s | fq-factor | quotient | rv | limit)");
  }
  if (fin) {
    if (trivial) fin = with_trivial_valuation(*fin);
    s.H = fin;
    s.sort = std::make_shared<TableSort>(fin);
    s.exhaustive = true;
  } else if (trivial) {
    throw Error(ErrorCode::Usage, "--trivial-valuation applies to finite structures only");
  }
  return s;
}

int cmd_check(const std::vector<std::string>& args, bool trivial, const RunConfig& cfg) {
  if (args.size() < 2) throw Error(ErrorCode::Usage, "usage: check <structure...> <ch|hf|v|ih|rv>");
  std::string family = args.back();
  Structure s = build_structure({args.begin(), args.end() - 1}, trivial, cfg);
  Scope scope = s.exhaustive ? Scope::all() : cfg.scope();
  std::vector<Report> out;
  if (family == "ch") {
    out.push_back(check_canonical_hypergroup(*s.H, scope));
  } else if (family == "hf") {
    out.push_back(check_hyperfield(*s.H, scope));
  } else if (family == "v") {
    out.push_back(check_valuation(*s.H, scope));
    out.push_back(check_val_lemma(*s.H, scope));
  } else if (family == "ih") {
    if (!s.limit) throw Error(ErrorCode::Usage, "ih needs a limit structure");
    const Tower& T = s.limit->tower();
    for (std::size_t j = 1; j <= std::min<std::size_t>(cfg.budget, 3); ++j) {
      out.push_back(check_isometric(tower_map(T, j, j - 1), scope));
      out.push_back(induced_iso(tower_map(T, j, j - 1), scope));
    }
    out.push_back(check_triple_uniqueness(*s.limit, scope));
    out.push_back(check_limit_associativity(*s.limit, scope));
    for (std::size_t i = 0; i <= std::min<std::size_t>(cfg.budget, 2); ++i) out.push_back(limit_factor_iso(s.limit, i, scope));
  } else if (family == "rv") {
    if (!s.sort) throw Error(ErrorCode::Usage, "rv needs a stringent structure");
    out.push_back(check_rv_axioms(*s.sort, scope));
    out.push_back(derive_rv8_9_10(*s.sort, scope));
  } else {
    throw Error(ErrorCode::Usage, "unknown family '" + family + "' (ch | hf | v | ih | rv)");
  }
  return emit(cfg, out);
}

int cmd_reconstruct(const std::string& spec, std::optional<std::size_t> delta_k, const RunConfig& cfg) {
  Tower T = load_tower(spec, cfg.budget);
  std::size_t k = delta_k ? *delta_k : (T.union_norm ? T.union_norm->k() : 0);
  ojson extra;
  try {
    auto R = reconstruct(T, ConvexSubgroup{T.rank, k}, cfg.budget, cfg.scope());
    std::vector<std::size_t> stages;
    for (std::size_t i = 0; i <= std::min<std::size_t>(cfg.budget, 3); ++i) stages.push_back(i);
    Report th = verify_theorem(R, stages, Scope::sampled(std::min<std::size_t>(cfg.samples, 100), cfg.seed));
    extra["pipeline"] = R.to_json()["pipeline"];
    extra["field_mode"] = R.limit->field_mode();
    if (!cfg.json) {
      for (const auto& p : extra["pipeline"]) std::cout << "-> " << p.get<std::string>() << "\n";
      if (R.limit->field_mode()) std::cout << "field mode: the limit is a valued field and K_new is its Hahn field over Gamma/Delta = 0\n";
    }
    return emit(cfg, {R.report, th}, extra);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DoublingUnavailable) throw;
    EmptinessReport w = detect_empty_sum_geometric_pair(T, 3);
    if (cfg.json) {
      ojson j;
      j["config"] = cfg.to_json();
      j["error"] = e.what();
      j["emptiness"] = w.to_json();
      j["passed"] = false;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "rejected: " << e.what() << "\n";
      std::cout << "emptiness witness (" << verdict_name(w.verdict) << ", m <= " << w.m_max << "): " << w.witness << "\n";
    }
    return 1;
  }
}

// Top-level split of "a op b" on a single-character operator outside parentheses.
std::vector<std::string> split_top(const std::string& s, char op) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == op && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string unparen(const std::string& s) {
  std::string t = trim(s);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') return t.substr(1, t.size() - 2);
  return t;
}

HandlePtr hyper_handle(const std::string& spec, const RunConfig& cfg) {
  std::string s = trim(spec);
  if (s == "k") return krasner_K();
  if (s == "s") return krasner_S();
  if (s.rfind("h_rho(", 0) == 0 && s.back() == ')') {
    std::string inner = s.substr(6, s.size() - 7);
    auto comma = inner.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::Usage, "h_rho(<ground>,<segment>)");
    GroundSpec g = parse_ground(trim(inner.substr(0, comma)));
    return make_quotient(g, parse_segment(trim(inner.substr(comma + 1)), g.rank()));
  }
  if (s.rfind("limit(", 0) == 0 && s.back() == ')') return limit_hyperfield(load_tower(s.substr(6, s.size() - 7), cfg.budget));
  throw Error(ErrorCode::Usage, "unknown hyperfield '" + spec + "' (k | s | h_rho(ground,segment) | limit(tower))");
}

HyperElem hyper_elem(const HandlePtr& H, const std::string& text) {
  std::string t = unparen(text);
  if (auto q = std::dynamic_pointer_cast<const QuotientField>(H)) return q->parse(t);
  if (auto f = std::dynamic_pointer_cast<const FiniteHyperfield>(H)) return f->find(trim(text));
  if (auto l = std::dynamic_pointer_cast<const LimitHyperfield>(H)) return l->embed(t);
  throw Error(ErrorCode::Unsupported, "no element syntax for " + H->name());
}

std::string eval_hyper(const std::string& spec, const std::string& expr, const RunConfig& cfg) {
  HandlePtr H = hyper_handle(spec, cfg);
  std::string e = trim(expr);
  const std::string ni = "\xe2\x88\x8b";
  bool member = e.rfind("member", 0) == 0;
  if (member) e = trim(e.substr(6));
  auto pos = e.find(ni);
  std::size_t len = ni.size();
  if (pos == std::string::npos && (pos = e.find(" ni ")) != std::string::npos) len = 4;
  if (pos != std::string::npos) {
    auto lhs = split_top(e.substr(0, pos), '+');
    HyperElem z = hyper_elem(H, e.substr(pos + len));
    std::vector<HyperElem> xs;
    for (const auto& x : lhs) xs.push_back(hyper_elem(H, x));
    return H->contains(nary_sum(*H, xs), z) ? "true" : "false";
  }
  if (member) throw Error(ErrorCode::Syntax, "member query needs '\xe2\x88\x8b'");
  auto sum = split_top(e, '+');
  if (sum.size() > 1) {
    std::vector<HyperElem> xs;
    for (const auto& x : sum) xs.push_back(hyper_elem(H, x));
    return H->show_set(nary_sum(*H, xs));
  }
  auto prod = split_top(e, '*');
  HyperElem acc = H->one();
  for (const auto& x : prod) acc = H->mul(acc, hyper_elem(H, x));
  return H->show(acc);
}

std::string pretty(const HahnSeries& a) {
  auto split = std::dynamic_pointer_cast<const SplitSort>(a.sort());
  if (!split || a.rank() != 1) return show_hahn(a);
  std::vector<Term> ts;
  for (const auto& t : a.terms()) ts.push_back({t.g, split->rv().rep(t.a).f});
  auto s = FieldSeries::from_terms(split->rv().structure().F, 1, ts, a.prec()).str({"t"});
  if (a.prec()) {
    auto o = s.rfind("O(t^");
    s = s.substr(0, o) + "O(t^" + std::to_string((*a.prec())[0]) + ")";
  }
  return s;
}

// Arguments separated by ';' inside name( ... ).
std::optional<std::vector<std::string>> call_args(const std::string& e, const std::string& name) {
  if (e.rfind(name + "(", 0) != 0 || e.back() != ')') return std::nullopt;
  return split_top(e.substr(name.size() + 1, e.size() - name.size() - 2), ';');
}

std::string eval_rv(const std::string& spec, const std::string& expr) {
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::Usage, "--rv <field>,<group>, e.g. q,z");
  SortPtr R = std::make_shared<SplitSort>(parse_sequence_structure(spec.substr(0, comma), spec.substr(comma + 1)));
  std::string e = trim(expr);
  auto series = [&](const std::string& s) {
    std::string t = trim(s);
    return t.find(';') != std::string::npos ? parse_hahn(R, t) : hahn_from_poly(R, t);
  };
  auto target = [&](const std::string& s) {
    GroupElem g = parse_group_elem(trim(s));
    if (g.rank() != R->nu_rank()) throw Error(ErrorCode::Syntax, "target of wrong rank: " + s);
    return g;
  };
  if (auto a = call_args(e, "inv")) {
    if (a->size() != 2) throw Error(ErrorCode::Syntax, "inv(<series>; <target>)");
    return pretty(hs_inverse(series((*a)[0]), target((*a)[1])));
  }
  if (auto a = call_args(e, "hensel")) {
    if (a->size() != 3) throw Error(ErrorCode::Syntax, "hensel(<c0>, <c1>, ...; <r0>; <target>)");
    HahnPoly f;
    for (const auto& c : split_top((*a)[0], ',')) f.push_back(series(c));
    return pretty(hensel_lift(f, series((*a)[1]), target((*a)[2])));
  }
  if (auto a = call_args(e, "oplus")) {
    if (a->size() != 2) throw Error(ErrorCode::Syntax, "oplus(<rv>; <rv>)");
    const auto& H = std::dynamic_pointer_cast<const SplitSort>(R)->rv();
    return R->show(R->oplus(H.parse(trim((*a)[0])), H.parse(trim((*a)[1]))));
  }
  if (auto a = call_args(e, "boxplus")) {
    if (a->size() != 2) throw Error(ErrorCode::Syntax, "boxplus(<rv>; <rv>)");
    const auto& H = std::dynamic_pointer_cast<const SplitSort>(R)->rv();
    return H.show_set(H.add(H.parse(trim((*a)[0])), H.parse(trim((*a)[1]))));
  }
  if (auto a = call_args(e, "rv")) {
    if (a->size() != 1) throw Error(ErrorCode::Syntax, "rv(<series>)");
    return R->show(rv_project(series((*a)[0])));
  }
  return pretty(series(e));
}

std::string eval_ground(const std::string& ground, const std::string& expr, const std::string& prec) {
  GroundSpec g = parse_ground(ground);
  if (prec.empty()) throw Error(ErrorCode::Usage, "--ground needs --prec");
  GroupElem cut = parse_group_elem(prec);
  if (cut.rank() != g.rank()) throw Error(ErrorCode::Usage, "--prec has rank " + std::to_string(cut.rank()));
  return expand(parse_rf(expr, g.vars), g.F, g.rank(), cut).str(g.vars);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Valued hyperfields, inverse limits, RV-sorts and Hahn-series reconstruction"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&cfg](CLI::App* c) {
    c->add_option("--seed", cfg.seed, "RNG seed");
    c->add_option("--budget", cfg.budget, "stage budget for limits");
    c->add_option("--samples", cfg.samples, "sample count");
    c->add_option("--prec", cfg.prec, "precision cut, e.g. (0,4)");
    c->add_flag("--json", cfg.json, "JSON output");
  };

  auto* check = app.add_subcommand("check", "run an axiom family on a structure");
  std::vector<std::string> check_args;
  bool trivial = false;
  check->add_option("args", check_args, "k | s | fq-factor p T | quotient <ground> <rho> | rv <field> <group> | limit <tower>, then ch | hf | v | ih | rv")
      ->required();
  check->add_flag("--trivial-valuation", trivial, "attach v(x) = 0 to a finite hyperfield");
  common(check);

  auto* rec = app.add_subcommand("reconstruct", "tower -> limit -> Hahn field, with stagewise verification");
  std::string tower;
  std::optional<std::size_t> delta;
  rec->add_option("tower", tower, "upto-0n | upto-n0 | upto-1m | rank1-f<p> | JSON file")->required();
  rec->add_option("--delta", delta, "rank k of Delta = {0}^(n-k) x Z^k");
  common(rec);

  auto* ev = app.add_subcommand("eval", "evaluate an expression");
  std::string ground, rv, hyper;
  std::vector<std::string> exprs;
  ev->add_option("--ground", ground, "ground field for series expansion, e.g. q2");
  ev->add_option("--rv", rv, "split RV-sort <field>,<group>, e.g. q,z");
  ev->add_option("--hyper", hyper, "hyperfield: k | s | h_rho(ground,segment) | limit(tower)");
  ev->add_option("expr", exprs, "expression")->required();
  common(ev);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(check_args, trivial, cfg);
    if (*rec) return cmd_reconstruct(tower, delta, cfg);
    int modes = !ground.empty() + !rv.empty() + !hyper.empty();
    if (modes != 1) throw Error(ErrorCode::Usage, "eval needs exactly one of --ground, --rv, --hyper");
    std::string expr;
    for (const auto& e : exprs) expr += (expr.empty() ? "" : " ") + e;
    std::string out = !ground.empty() ? eval_ground(ground, expr, cfg.prec)
                      : !rv.empty()   ? eval_rv(rv, expr)
                                      : eval_hyper(hyper, expr, cfg);
    if (cfg.json) {
      ojson j;
      j["config"] = cfg.to_json();
      j["expr"] = expr;
      j["value"] = out;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << out << "\n";
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
}
