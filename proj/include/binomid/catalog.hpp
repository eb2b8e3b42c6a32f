#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "binomid/dsl.hpp"
#include "binomid/proof_script.hpp"
#include "binomid/verifier.hpp"

namespace binomid {

/// Raised when a catalog or proof file cannot be read or parsed.
class CatalogLoadError : public Error {
 public:
  using Error::Error;
};

/// Identities, lemmas, specialization claims and proof scripts. Immutable
/// once loaded.
class Catalog {
 public:
  static Catalog from_text(std::string_view catalog_text, std::string_view proofs_text = {});
  static Catalog from_files(const std::string& catalog_path, const std::string& proofs_path);
  /// The shipped data files. BINOMID_CATALOG and BINOMID_PROOFS override
  /// the paths.
  static Catalog load_builtin();
  static std::string builtin_catalog_path();
  static std::string builtin_proofs_path();

  const std::vector<Identity>& identities() const { return identities_; }
  const std::vector<Identity>& lemmas() const { return lemmas_; }
  const std::vector<SpecializationDecl>& claims() const { return claims_; }
  const std::vector<ProofScript>& scripts() const { return scripts_; }

  /// Identity or lemma by name.
  const Identity* find(const std::string& name) const;
  const Identity* find_identity(const std::string& name) const;
  const SpecializationDecl* find_claim(const std::string& target) const;
  const ProofScript* find_script(const std::string& name) const;
  IdentityLookup lookup() const;

  std::vector<std::string> identity_names() const;

 private:
  std::vector<Identity> identities_;
  std::vector<Identity> lemmas_;
  std::vector<SpecializationDecl> claims_;
  std::vector<ProofScript> scripts_;
};

/// Applies rewrite, substitution and sign-balancing steps in order. Factor
/// positions refer to the term as it stands before each step.
Identity apply_chain(const Identity& I, const std::vector<ChainStep>& chain);

struct SpecializationReport {
  std::string claim;
  std::string parent;
  bool structural_match = false;
  /// Canonical text of the substituted (and rewritten) parent and of the
  /// claimed identity (after its own rewrite chain).
  std::string derived_form;
  std::string target_form;
  std::string detail;
  /// Present when the claim records a parameter swap.
  std::optional<bool> swap_ok;
  std::string swap_detail;
  VerificationReport numeric;
  std::optional<VerificationReport> swapped_numeric;

  bool passed() const {
    return structural_match && numeric.passed() && swap_ok.value_or(true) &&
           (!swapped_numeric || swapped_numeric->passed());
  }
};

/// Default grid of a claim: every target parameter on 0..5, overridden by
/// the claim's own ranges.
GridSpec claim_grid(const Catalog& cat, const SpecializationDecl& claim);

SpecializationReport check_specialization(const Catalog& cat, const SpecializationDecl& claim,
                                          const std::optional<GridSpec>& grid = std::nullopt, unsigned jobs = 1);

nlohmann::json to_json(const SpecializationReport& r, bool include_timing = true);
std::string to_text(const SpecializationReport& r);

}  // namespace binomid
