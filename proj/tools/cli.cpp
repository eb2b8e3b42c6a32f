#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <regex>
#include <set>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "binomid/arith_invariants.hpp"
#include "binomid/catalog.hpp"
#include "binomid/dsl.hpp"
#include "binomid/proof_script.hpp"
#include "binomid/verifier.hpp"

namespace binomid::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Range = std::pair<long long, long long>;

// Parsed --range flags: named entries plus the optional '*' fallback.
struct RangeSet {
  std::map<std::string, Range> named;
  std::optional<Range> star;

  bool empty() const { return named.empty() && !star; }

  Range for_param(const std::string& p, Range fallback) const {
    if (auto it = named.find(p); it != named.end()) return it->second;
    return star.value_or(fallback);
  }
};

RangeSet parse_ranges(const std::vector<std::string>& specs) {
  static const std::regex re(R"(^\s*(\*|[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
  RangeSet rs;
  for (const auto& s : specs) {
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("bad range '" + s + "', expected name=lo..hi or *=lo..hi");
    Range r;
    try {
      r = {std::stoll(m[2].str()), std::stoll(m[3].str())};
    } catch (const std::out_of_range&) {
      throw UsageError("range bound out of range in '" + s + "'");
    }
    if (r.first > r.second) throw UsageError("empty range '" + s + "'");
    if (m[1] == "*")
      rs.star = r;
    else
      rs.named[m[1].str()] = r;
  }
  return rs;
}

// Every named range must refer to a parameter of at least one selected
// identity.
void check_range_names(const RangeSet& rs, const std::vector<const Identity*>& ids) {
  for (const auto& [name, r] : rs.named) {
    bool used = std::any_of(ids.begin(), ids.end(), [&](const Identity* I) {
      return std::find(I->params.begin(), I->params.end(), name) != I->params.end();
    });
    if (!used) throw UsageError("range for '" + name + "' matches no parameter of the selected identities");
  }
}

GridSpec grid_for(const Identity& I, const RangeSet& rs, Range fallback) {
  GridSpec g;
  for (const auto& p : I.params) g.ranges[p] = rs.for_param(p, fallback);
  return g;
}

std::string join(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
  return s;
}

std::vector<const Identity*> select_identities(const Catalog& cat, const std::vector<std::string>& names) {
  std::vector<const Identity*> out;
  if (names.empty()) {
    for (const auto& I : cat.identities()) out.push_back(&I);
    return out;
  }
  for (const auto& n : names) {
    const Identity* I = cat.find(n);
    if (!I) throw UsageError("unknown identity '" + n + "'; valid names: " + join(cat.identity_names()));
    out.push_back(I);
  }
  return out;
}

json env_json(const OrderedEnv& env) {
  json j = json::object();
  for (const auto& [k, v] : env) j[k] = v.convert_to<long long>();
  return j;
}

json proof_json(const ProofReport& r, bool with_trace) {
  json j{{"script", r.script}, {"identity", r.identity}, {"instances", r.instances}};
  j["structure"] = {{"passed", r.structure.passed}, {"detail", r.structure.detail}};
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back({{"label", s.label}, {"passed", s.passed}, {"failed", s.failed}});
  j["steps"] = steps;
  if (r.first_failure)
    j["first_failure"] = {{"step", r.first_failure->step},
                          {"instance", env_json(r.first_failure->instance)},
                          {"detail", r.first_failure->detail}};
  else
    j["first_failure"] = nullptr;
  j["passed"] = r.passed();
  if (with_trace) j["trace"] = r.trace;
  return j;
}

struct Options {
  std::vector<std::string> identities;
  std::vector<std::string> claims;
  std::vector<std::string> scripts;
  std::vector<std::string> names;
  std::vector<std::string> ranges;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "text";
  bool no_timing = false;
  std::optional<long long> bound_window;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1000;
  long long window = 8;
  bool dump_trace = false;
  int bound = 30;
};

bool json_out(const Options& o) { return o.format == "json"; }

void emit(std::ostream& out, const std::string& text) {
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
}

int cmd_catalog_list(const Catalog& cat, const Options& o, std::ostream& out) {
  if (json_out(o)) {
    json j;
    auto ids = [](const std::vector<Identity>& v) {
      json a = json::array();
      for (const auto& I : v) a.push_back({{"name", I.name}, {"params", I.params}});
      return a;
    };
    j["identities"] = ids(cat.identities());
    j["lemmas"] = ids(cat.lemmas());
    json claims = json::array();
    for (const auto& c : cat.claims()) claims.push_back({{"target", c.target}, {"parent", c.parent}});
    j["claims"] = claims;
    json scripts = json::array();
    for (const auto& s : cat.scripts()) scripts.push_back({{"name", s.name}, {"identity", s.identity}});
    j["scripts"] = scripts;
    out << j.dump() << "\n";
    return 0;
  }
  for (const auto& I : cat.identities()) out << "identity " << I.name << " (" << join(I.params) << ")\n";
  for (const auto& I : cat.lemmas()) out << "lemma " << I.name << " (" << join(I.params) << ")\n";
  for (const auto& c : cat.claims()) out << "claim " << c.target << " from " << c.parent << "\n";
  for (const auto& s : cat.scripts()) out << "script " << s.name << " proves " << s.identity << "\n";
  return 0;
}

int cmd_catalog_print(const Catalog& cat, const Options& o, std::ostream& out) {
  std::vector<const Identity*> ids = select_identities(cat, o.names);
  for (const Identity* I : ids) {
    bool lemma = std::any_of(cat.lemmas().begin(), cat.lemmas().end(), [&](const Identity& L) { return &L == I; });
    std::string text = print_identity(*I, lemma ? "lemma" : "identity");
    if (json_out(o))
      out << json{{"name", I->name}, {"text", text}}.dump() << "\n";
    else
      out << text << "\n";
  }
  return 0;
}

int cmd_verify(const Catalog& cat, const Options& o, std::ostream& out) {
  auto ids = select_identities(cat, o.identities);
  RangeSet rs = parse_ranges(o.ranges);
  check_range_names(rs, ids);
  bool ok = true;
  for (const Identity* I : ids) {
    GridSpec g = grid_for(*I, rs, {0, 5});
    VerificationReport r = verify_grid(*I, g, o.jobs);
    if (o.bound_window) r.bound_sensitive = grid_bound_sensitive(*I, g, *o.bound_window);
    ok = ok && r.passed();
    if (json_out(o))
      out << to_json(r, !o.no_timing).dump() << "\n";
    else
      emit(out, to_text(r));
  }
  return ok ? 0 : 1;
}

int cmd_fuzz(const Catalog& cat, const Options& o, std::ostream& out) {
  auto ids = select_identities(cat, o.identities);
  RangeSet rs = parse_ranges(o.ranges);
  if (!rs.named.empty()) throw UsageError("fuzz draws every parameter from one range; use --range '*=lo..hi'");
  Range r = rs.star.value_or(Range{-5, 5});
  bool ok = true;
  for (const Identity* I : ids) {
    VerificationReport rep = fuzz(*I, o.seed, o.trials, r.first, r.second);
    ok = ok && rep.passed();
    if (json_out(o))
      out << to_json(rep, !o.no_timing).dump() << "\n";
    else
      emit(out, to_text(rep));
  }
  return ok ? 0 : 1;
}

int cmd_specialize(const Catalog& cat, const Options& o, std::ostream& out) {
  std::vector<const SpecializationDecl*> claims;
  if (o.claims.empty()) {
    for (const auto& c : cat.claims()) claims.push_back(&c);
  } else {
    for (const auto& n : o.claims) {
      const SpecializationDecl* c = cat.find_claim(n);
      if (!c) {
        std::vector<std::string> valid;
        for (const auto& d : cat.claims()) valid.push_back(d.target);
        throw UsageError("unknown claim '" + n + "'; valid names: " + join(valid));
      }
      claims.push_back(c);
    }
  }
  RangeSet rs = parse_ranges(o.ranges);
  std::vector<const Identity*> targets;
  for (const auto* c : claims) targets.push_back(cat.find(c->target));
  check_range_names(rs, targets);

  bool ok = true;
  for (const auto* c : claims) {
    std::optional<GridSpec> grid;
    if (!rs.empty()) {
      grid = claim_grid(cat, *c);
      for (auto& [p, range] : grid->ranges) {
        if (auto it = rs.named.find(p); it != rs.named.end())
          range = it->second;
        else if (rs.star && !c->grid.count(p))
          range = *rs.star;
      }
    }
    SpecializationReport r = check_specialization(cat, *c, grid, o.jobs);
    ok = ok && r.passed();
    if (json_out(o))
      out << to_json(r, !o.no_timing).dump() << "\n";
    else
      emit(out, to_text(r));
  }
  return ok ? 0 : 1;
}

int cmd_prove(const Catalog& cat, const Options& o, std::ostream& out) {
  std::vector<const ProofScript*> scripts;
  if (o.scripts.empty()) {
    for (const auto& s : cat.scripts()) scripts.push_back(&s);
  } else {
    for (const auto& n : o.scripts) {
      const ProofScript* s = cat.find_script(n);
      if (!s) {
        std::vector<std::string> valid;
        for (const auto& d : cat.scripts()) valid.push_back(d.name);
        throw UsageError("unknown script '" + n + "'; valid names: " + join(valid));
      }
      scripts.push_back(s);
    }
  }
  if (o.window < 1) throw UsageError("--window must be positive");
  RangeSet rs = parse_ranges(o.ranges);
  std::vector<const Identity*> proved;
  for (const auto* s : scripts) proved.push_back(cat.find(s->identity));
  check_range_names(rs, proved);

  ComparisonOptions opt;
  opt.window = o.window;
  opt.want_trace = o.dump_trace;
  bool ok = true;
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    auto instances = script_instances(*scripts[i], *proved[i], grid_for(*proved[i], rs, {0, 3}));
    ProofReport r = run_proof_script(*scripts[i], instances, cat.lookup(), opt, o.jobs);
    ok = ok && r.passed();
    if (json_out(o)) {
      out << proof_json(r, o.dump_trace).dump() << "\n";
    } else {
      emit(out, to_text(r));
      if (o.dump_trace) emit(out, r.trace);
    }
  }
  return ok ? 0 : 1;
}

int cmd_check_arith(const Options& o, std::ostream& out) {
  if (o.bound < 0) throw UsageError("--bound must be nonnegative");
  bool ok = true;
  for (const auto& c : check_arith_invariants(o.bound)) {
    ok = ok && c.failed == 0;
    if (json_out(o)) {
      json j{{"invariant", c.name}, {"checked", c.checked}, {"failed", c.failed}};
      if (c.failed) j["first_failure"] = c.first_failure;
      out << j.dump() << "\n";
    } else {
      out << c.name << ": checked " << c.checked << ", failed " << c.failed;
      if (c.failed) out << " (first at " << c.first_failure << ")";
      out << "\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification and proof checking for binomial-coefficient identities", "binomid"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_jobs = [&](CLI::App* sub) {
    sub->add_option("--jobs,-j", o.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  };
  auto add_range = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("--range,-r", o.ranges, "Parameter range name=lo..hi, or *=lo..hi for all unset (" + what + ")");
  };

  auto* catalog = app.add_subcommand("catalog", "Inspect the identity catalog");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List identities, lemmas, claims and scripts");
  add_format(list);
  auto* print = catalog->add_subcommand("print", "Print identities in canonical DSL form");
  print->add_option("names", o.names, "Identity or lemma names (default: all identities)");
  add_format(print);

  auto* verify = app.add_subcommand("verify", "Exhaustive grid verification");
  verify->add_option("--identity,-i", o.identities, "Identity name (repeatable, default: all)");
  add_range(verify, "default 0..5");
  add_jobs(verify);
  add_format(verify);
  verify->add_flag("--no-timing", o.no_timing, "Omit elapsed time from reports");
  verify->add_option("--bound-window", o.bound_window, "Also test sensitivity to widening the sum range by this much");

  auto* fz = app.add_subcommand("fuzz", "Seeded random verification");
  fz->add_option("--identity,-i", o.identities, "Identity name (repeatable, default: all)");
  add_range(fz, "only *=lo..hi, default -5..5");
  fz->add_option("--seed", o.seed, "Random seed");
  fz->add_option("--trials", o.trials, "Number of random environments");
  add_format(fz);
  fz->add_flag("--no-timing", o.no_timing, "Omit elapsed time from reports");

  auto* spec = app.add_subcommand("specialize", "Certify literature identities as specializations");
  spec->add_option("--claim,-c", o.claims, "Claim (target identity) name (repeatable, default: all)");
  add_range(spec, "default 0..5 or the claim's own grid");
  add_jobs(spec);
  add_format(spec);
  spec->add_flag("--no-timing", o.no_timing, "Omit elapsed time from reports");

  auto* prove = app.add_subcommand("prove", "Check proof scripts step by step");
  prove->add_option("--script,-s", o.scripts, "Script name (repeatable, default: all)");
  add_range(prove, "default 0..3");
  prove->add_option("--window", o.window, "Initial series truncation per variable");
  prove->add_flag("--dump-trace", o.dump_trace, "Print every intermediate coefficient table");
  add_jobs(prove);
  add_format(prove);

  auto* arith = app.add_subcommand("check-arith", "Run the binomial invariant suite");
  arith->add_option("--bound", o.bound, "Check all |n|,|k| up to this bound");
  add_format(arith);

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (arith->parsed()) return cmd_check_arith(o, out);
    Catalog cat = Catalog::load_builtin();
    if (list->parsed()) return cmd_catalog_list(cat, o, out);
    if (print->parsed()) return cmd_catalog_print(cat, o, out);
    if (verify->parsed()) return cmd_verify(cat, o, out);
    if (fz->parsed()) return cmd_fuzz(cat, o, out);
    if (spec->parsed()) return cmd_specialize(cat, o, out);
    if (prove->parsed()) return cmd_prove(cat, o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CatalogLoadError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace binomid::cli
