#include "binomid/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef BINOMID_DATA_DIR
#define BINOMID_DATA_DIR "data"
#endif

namespace binomid {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogLoadError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const char* env_or_null(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

}  // namespace

Catalog Catalog::from_text(std::string_view catalog_text, std::string_view proofs_text) {
  Catalog cat;
  CatalogText parsed = parse_catalog(catalog_text);
  cat.identities_ = std::move(parsed.identities);
  cat.lemmas_ = std::move(parsed.lemmas);
  cat.claims_ = std::move(parsed.specializations);
  if (!proofs_text.empty()) cat.scripts_ = parse_proof_scripts(proofs_text, cat.lookup());
  return cat;
}

Catalog Catalog::from_files(const std::string& catalog_path, const std::string& proofs_path) {
  const std::string catalog_text = read_file(catalog_path);
  const std::string proofs_text = proofs_path.empty() ? std::string() : read_file(proofs_path);
  try {
    Catalog cat;
    CatalogText parsed = parse_catalog(catalog_text);
    cat.identities_ = std::move(parsed.identities);
    cat.lemmas_ = std::move(parsed.lemmas);
    cat.claims_ = std::move(parsed.specializations);
    try {
      if (!proofs_text.empty()) cat.scripts_ = parse_proof_scripts(proofs_text, cat.lookup());
    } catch (const ParseError& e) {
      throw CatalogLoadError(proofs_path + ":" + e.span().to_string() + ": " + e.what());
    }
    return cat;
  } catch (const ParseError& e) {
    throw CatalogLoadError(catalog_path + ":" + e.span().to_string() + ": " + e.what());
  }
}

std::string Catalog::builtin_catalog_path() {
  if (const char* p = env_or_null("BINOMID_CATALOG")) return p;
  return std::string(BINOMID_DATA_DIR) + "/catalog.bid";
}

std::string Catalog::builtin_proofs_path() {
  if (const char* p = env_or_null("BINOMID_PROOFS")) return p;
  return std::string(BINOMID_DATA_DIR) + "/proofs.bid";
}

Catalog Catalog::load_builtin() { return from_files(builtin_catalog_path(), builtin_proofs_path()); }

const Identity* Catalog::find_identity(const std::string& name) const {
  for (const auto& I : identities_) {
    if (I.name == name) return &I;
  }
  return nullptr;
}

const Identity* Catalog::find(const std::string& name) const {
  if (const Identity* I = find_identity(name)) return I;
  for (const auto& L : lemmas_) {
    if (L.name == name) return &L;
  }
  return nullptr;
}

const SpecializationDecl* Catalog::find_claim(const std::string& target) const {
  for (const auto& c : claims_) {
    if (c.target == target) return &c;
  }
  return nullptr;
}

const ProofScript* Catalog::find_script(const std::string& name) const {
  for (const auto& s : scripts_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

IdentityLookup Catalog::lookup() const {
  return [this](const std::string& name) { return find(name); };
}

std::vector<std::string> Catalog::identity_names() const {
  std::vector<std::string> out;
  for (const auto& I : identities_) out.push_back(I.name);
  return out;
}

Identity apply_chain(const Identity& I, const std::vector<ChainStep>& chain) {
  Identity cur = I;
  for (const auto& step : chain) {
    switch (step.kind) {
      case ChainStep::Kind::Rewrite:
        cur = apply_rewrite(cur, step.side, step.rule, step.first - 1, step.second == 0 ? 0 : step.second - 1);
        break;
      case ChainStep::Kind::Subst:
        cur = substitute_raw(cur, Substitution{step.subst, cur.params}, cur.name);
        break;
      case ChainStep::Kind::BalanceSigns:
        cur = balance_signs(cur);
        break;
    }
  }
  return cur;
}

GridSpec claim_grid(const Catalog& cat, const SpecializationDecl& claim) {
  const Identity* target = cat.find_identity(claim.target);
  if (!target) throw EvalError("unknown identity '" + claim.target + "'");
  GridSpec g = GridSpec::uniform(*target, 0, 5);
  for (const auto& [p, range] : claim.grid) g.ranges[p] = range;
  return g;
}

namespace {

/// Same summand and right side, ignoring the summation bounds.
bool same_up_to_bounds(const Identity& a, const Identity& b) {
  Identity ca = canonicalize(a);
  Identity cb = canonicalize(b);
  if (ca.has_sum() != cb.has_sum()) return false;
  if (ca.has_sum()) {
    ca.sum().lower = cb.sum().lower;
    ca.sum().upper = cb.sum().upper;
  }
  return structurally_equal(ca, cb, false);
}

}  // namespace

SpecializationReport check_specialization(const Catalog& cat, const SpecializationDecl& claim,
                                          const std::optional<GridSpec>& grid, unsigned jobs) {
  const Identity* target = cat.find_identity(claim.target);
  const Identity* parent = cat.find_identity(claim.parent);
  if (!target || !parent) throw EvalError("claim '" + claim.target + "' names an unknown identity");
  SpecializationReport r;
  r.claim = claim.target;
  r.parent = claim.parent;

  // The identity the parent must reach: the lemma for claims that go
  // through one, else the claimed identity after its own rewrite chain.
  Identity goal = apply_chain(*target, claim.source_chain);
  try {
    Identity derived = substitute_raw(*parent, Substitution{claim.map, target->params}, claim.target);
    derived = canonicalize(apply_chain(derived, claim.parent_chain));
    r.derived_form = print_identity(derived);
    r.target_form = print_identity(canonicalize(goal));
    bool match = structurally_equal(derived, goal, true);
    if (claim.via) {
      const Identity* lemma = cat.find(*claim.via);
      if (!lemma) throw EvalError("unknown lemma '" + *claim.via + "'");
      const bool source_reaches = structurally_equal(canonicalize(goal), *lemma, true);
      const bool parent_reaches = structurally_equal(derived, *lemma, true);
      if (!source_reaches) r.detail = claim.target + " does not rewrite to " + *claim.via;
      if (!parent_reaches) r.detail += std::string(r.detail.empty() ? "" : "; ") + claim.parent + " does not specialize to " + *claim.via;
      match = match && source_reaches && parent_reaches;
    }
    r.structural_match = match;
    if (!match && r.detail.empty()) r.detail = "canonical forms differ";
  } catch (const Error& e) {
    r.structural_match = false;
    r.detail = e.what();
  }

  const GridSpec g = grid ? *grid : claim_grid(cat, claim);
  r.numeric = verify_grid(*target, g, jobs);

  if (!claim.swap.empty()) {
    Identity swapped = substitute_raw(*target, Substitution{claim.swap, target->params}, target->name + "-swapped");
    r.swap_ok = same_up_to_bounds(swapped, *target);
    if (!*r.swap_ok) r.swap_detail = "swap changes the identity: " + print_identity(canonicalize(swapped));
    r.swapped_numeric = verify_grid(swapped, g, jobs);
  }
  return r;
}

nlohmann::json to_json(const SpecializationReport& r, bool include_timing) {
  nlohmann::json j;
  j["claim"] = r.claim;
  j["parent"] = r.parent;
  j["structural"] = r.structural_match ? "match" : "mismatch";
  j["derived"] = r.derived_form;
  j["target"] = r.target_form;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.swap_ok) {
    j["swap"] = {{"ok", *r.swap_ok}};
    if (!r.swap_detail.empty()) j["swap"]["detail"] = r.swap_detail;
    if (r.swapped_numeric) j["swap"]["numeric"] = to_json(*r.swapped_numeric, include_timing);
  }
  j["numeric"] = to_json(r.numeric, include_timing);
  j["passed"] = r.passed();
  return j;
}

std::string to_text(const SpecializationReport& r) {
  std::ostringstream out;
  out << r.claim << " from " << r.parent << ": " << (r.passed() ? "PASS" : "FAIL")
      << "  structural=" << (r.structural_match ? "match" : "mismatch");
  if (r.swap_ok) out << " swap=" << (*r.swap_ok ? "ok" : "FAIL");
  out << '\n';
  if (!r.structural_match) {
    out << "  derived: " << r.derived_form << "\n  target:  " << r.target_form << '\n';
    if (!r.detail.empty()) out << "  " << r.detail << '\n';
  }
  if (!r.swap_detail.empty()) out << "  " << r.swap_detail << '\n';
  out << "  " << to_text(r.numeric);
  if (r.swapped_numeric) out << "  swapped " << to_text(*r.swapped_numeric);
  return out.str();
}

}  // namespace binomid
