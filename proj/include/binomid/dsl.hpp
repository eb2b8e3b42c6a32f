#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "binomid/identity.hpp"
#include "binomid/lexer.hpp"
#include "binomid/rewrite.hpp"

namespace binomid {

/// Called for every variable occurrence; throws to reject the name.
using NameCheck = std::function<void(const std::string& name, const SourceSpan& span)>;

LinExpr parse_linexpr(TokenStream& ts, const NameCheck& check = {});
BinomFactor parse_binom(TokenStream& ts, const NameCheck& check = {});
Term parse_term(TokenStream& ts, const NameCheck& check = {});
/// `{ name = linexpr, ... }`
std::map<std::string, LinExpr> parse_assignments(TokenStream& ts, const NameCheck& check = {});

/// Parses a single `identity ...` declaration (the whole input).
Identity parse_identity(std::string_view text);
/// Parses one identity declaration at the cursor. `keyword` is `identity` or
/// `lemma`.
Identity parse_identity_decl(TokenStream& ts, std::string_view keyword = "identity");

std::string print_term(const Term& t);
std::string print_side(const Side& s);
/// Canonical one-line text of canonicalize(I).
std::string print_identity(const Identity& I, std::string_view keyword = "identity");

/// One step of a rewrite chain attached to a specialization.
struct ChainStep {
  enum class Kind { Rewrite, Subst, BalanceSigns };
  Kind kind = Kind::Rewrite;
  RewriteRule rule = RewriteRule::UpperNegation;
  IdentitySide side = IdentitySide::Lhs;
  /// 1-based factor positions as written.
  std::size_t first = 0;
  std::size_t second = 0;
  std::map<std::string, LinExpr> subst;
  SourceSpan span;
};

std::string print_chain_step(const ChainStep& s);

/// `specializes TARGET from PARENT with {...}` plus optional clauses.
struct SpecializationDecl {
  std::string target;
  std::string parent;
  std::map<std::string, LinExpr> map;
  /// Per-parameter inclusive ranges overriding the default grid.
  std::map<std::string, std::pair<long long, long long>> grid;
  /// Parameter swap under which the target identity is claimed invariant.
  std::map<std::string, LinExpr> swap;
  std::vector<ChainStep> source_chain;
  /// Lemma the source chain must reach.
  std::optional<std::string> via;
  std::vector<ChainStep> parent_chain;
  SourceSpan span;
};

struct CatalogText {
  std::vector<Identity> identities;
  std::vector<Identity> lemmas;
  std::vector<SpecializationDecl> specializations;
};

/// Parses a whole catalog file. Any error aborts the parse.
CatalogText parse_catalog(std::string_view text);

}  // namespace binomid
