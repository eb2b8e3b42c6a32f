#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binomid/identity.hpp"
#include "binomid/lexer.hpp"
#include "binomid/series_expr.hpp"
#include "binomid/verifier.hpp"

namespace binomid {

enum class StepKind { IntegralRep, GeometricCollapse, ResidueEval, AlgebraicRewrite, BinomExpand, CollectResidues, Recognize };

std::string to_string(StepKind k);
std::optional<StepKind> step_kind_from_string(std::string_view s);

/// One displayed equality. The before-expression is the previous step's
/// after-expression (or the script's start).
struct ProofStep {
  StepKind kind = StepKind::AlgebraicRewrite;
  std::string note;
  /// Multiplier pulled out in this step: before == factor * after.
  std::optional<Term> factor;
  SExprPtr after;  // unset for Recognize
  /// Recognize: catalog identity and parameter map onto it.
  std::string target;
  std::map<std::string, LinExpr> map;
  SourceSpan span;
};

struct ProofScript {
  std::string name;
  std::string identity;
  std::vector<VarSpec> vars;
  /// Abbreviations in terms of the identity's parameters.
  std::map<std::string, LinExpr> lets;
  std::vector<LinExpr> constraints;
  SExprPtr start;
  std::vector<ProofStep> steps;

  /// Expression before step i (0-based).
  const SExprPtr& before(std::size_t i) const;
  /// Product of the factors pulled out before step i.
  Term carry_before(std::size_t i) const;
};

using IdentityLookup = std::function<const Identity*(const std::string&)>;

/// Parses every `proof ... end` block of a file.
///
///   proof NAME proves IDENTITY
///     vars { x: large, y: small }
///     let { a = c+d-b }
///     require c+d-b >= 0
///     start EXPR
///     step KIND "note" [factor TERM] => EXPR
///     step Recognize "note" IDENTITY with { p = linexpr, ... }
///   end
std::vector<ProofScript> parse_proof_scripts(std::string_view text, const IdentityLookup& lookup);

/// Instance values plus the script's let bindings.
ParamEnv bind_lets(const ProofScript& s, const ParamEnv& instance);
/// Script and identity constraints at the instance.
bool instance_applies(const ProofScript& s, const Identity& proved, const ParamEnv& instance);

struct StepOutcome {
  bool passed = false;
  std::string detail;
  /// Coefficient tables (or values) of both sides, for --dump-trace.
  std::string trace;
};

struct ComparisonOptions {
  /// Initial truncation cap per variable; doubled on window failures.
  std::int64_t window = 8;
  int max_doublings = 3;
  bool want_trace = false;
};

/// before == factor * after as series: values agree, and when both sides
/// open with residues in common variables, the integrands agree as series on
/// the intersection of their windows. A window that cannot cover the
/// compared coefficients even at the largest cap throws WindowError.
StepOutcome compare_expressions(const SExprPtr& before, const SExprPtr& after, const Rational& factor,
                                const ParamEnv& env, const std::vector<VarSpec>& vars, const ComparisonOptions& opt);

/// Checks step i (0-based) of the script at one instance. Recognize steps
/// check the parameter map numerically: the final expression equals the
/// target's left side at the mapped values, the target holds there, and its
/// right side times the carried factors equals the proved identity's right side.
StepOutcome check_step(const ProofScript& s, std::size_t i, const ParamEnv& instance, const IdentityLookup& lookup,
                       const ComparisonOptions& opt = {});

/// Checks that start matches the identity's left side, and that the
/// Recognize map turns the target's left side into the final expression and
/// its right side (times the carry) into the identity's right side.
StepOutcome check_structure(const ProofScript& s, const IdentityLookup& lookup);

struct StepStats {
  std::string label;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
};

struct ProofFailure {
  /// 0 for the start check, i+1 for step i.
  std::size_t step = 0;
  OrderedEnv instance;
  std::string detail;
};

struct ProofReport {
  std::string script;
  std::string identity;
  std::uint64_t instances = 0;
  /// Entry 0 is the start check, entry i+1 step i.
  std::vector<StepStats> steps;
  StepOutcome structure;
  std::optional<ProofFailure> first_failure;
  std::string trace;

  bool passed() const { return structure.passed && !first_failure; }
};

/// Every grid point that satisfies the script and identity constraints, in
/// lexicographic order of the identity's parameters.
std::vector<ParamEnv> script_instances(const ProofScript& s, const Identity& proved, const GridSpec& grid);
std::vector<ParamEnv> script_instances(const ProofScript& s, const Identity& proved, long long lo, long long hi);

ProofReport run_proof_script(const ProofScript& s, const std::vector<ParamEnv>& instances, const IdentityLookup& lookup,
                             const ComparisonOptions& opt = {}, unsigned jobs = 1);

std::string to_text(const ProofReport& r);

}  // namespace binomid
