#include "binomid/dsl.hpp"

#include <algorithm>
#include <set>

namespace binomid {

namespace {

const std::set<std::string>& reserved_names() {
  static const std::set<std::string> names = {"C", "sum", "res", "inf", "identity", "lemma", "params", "require"};
  return names;
}

}  // namespace

LinExpr parse_linexpr(TokenStream& ts, const NameCheck& check) {
  LinExpr e;
  bool first = true;
  while (true) {
    std::int64_t sign = 1;
    if (ts.accept_punct("-")) {
      sign = -1;
    } else if (ts.accept_punct("+")) {
    } else if (!first) {
      break;
    }
    const Token& tok = ts.peek();
    if (tok.kind == TokenKind::Int) {
      long long v = ts.expect_int();
      if (ts.accept_punct("*")) {
        const Token& name = ts.expect_ident("parameter name");
        if (check) check(name.text, name.span);
        e += LinExpr::var(name.text, sign * v);
      } else {
        e += LinExpr(sign * v);
      }
    } else if (tok.kind == TokenKind::Ident && !reserved_names().count(tok.text)) {
      ts.next();
      if (check) check(tok.text, tok.span);
      e += LinExpr::var(tok.text, sign);
    } else {
      ts.fail("unexpected " + describe(tok), {"integer", "parameter name"});
    }
    first = false;
    if (!ts.is_punct("+") && !ts.is_punct("-")) break;
  }
  return e;
}

BinomFactor parse_binom(TokenStream& ts, const NameCheck& check) {
  if (!ts.is_ident("C")) ts.fail("unexpected " + describe(ts.peek()), {"'C('", "'(-1)^('"});
  ts.next();
  ts.expect_punct("(");
  BinomFactor f;
  f.upper = parse_linexpr(ts, check);
  ts.expect_punct(",");
  f.lower = parse_linexpr(ts, check);
  ts.expect_punct(")");
  return f;
}

Term parse_term(TokenStream& ts, const NameCheck& check) {
  Term t;
  if (ts.is_punct("(") && ts.is_punct("-", 1) && ts.peek(2).kind == TokenKind::Int && ts.peek(2).text == "1" &&
      ts.is_punct(")", 3)) {
    for (int i = 0; i < 4; ++i) ts.next();
    ts.expect_punct("^");
    ts.expect_punct("(");
    t.sign_exponent = parse_linexpr(ts, check);
    ts.expect_punct(")");
    ts.expect_punct("*");
  }
  t.factors.push_back(parse_binom(ts, check));
  while (ts.accept_punct("*")) t.factors.push_back(parse_binom(ts, check));
  return t;
}

std::map<std::string, LinExpr> parse_assignments(TokenStream& ts, const NameCheck& check) {
  std::map<std::string, LinExpr> out;
  ts.expect_punct("{");
  if (ts.accept_punct("}")) return out;
  do {
    const Token& name = ts.expect_ident("parameter name");
    if (out.count(name.text)) ts.fail_at(name, "parameter '" + name.text + "' assigned twice");
    ts.expect_punct("=");
    out[name.text] = parse_linexpr(ts, check);
  } while (ts.accept_punct(","));
  ts.expect_punct("}");
  return out;
}

Identity parse_identity_decl(TokenStream& ts, std::string_view keyword) {
  ts.expect_keyword(keyword);
  Identity I;
  I.name = ts.expect_ident("identity name").text;
  ts.expect_keyword("params");
  ts.expect_punct("(");
  std::set<std::string> declared;
  do {
    const Token& p = ts.expect_ident("parameter name");
    if (reserved_names().count(p.text)) ts.fail_at(p, "'" + p.text + "' is reserved");
    if (!declared.insert(p.text).second) ts.fail_at(p, "duplicate parameter '" + p.text + "'");
    I.params.push_back(p.text);
  } while (ts.accept_punct(","));
  ts.expect_punct(")");

  auto params_only = [&](const std::string& name, const SourceSpan& span) {
    if (!declared.count(name)) throw ParseError("unknown variable '" + name + "'", span);
  };

  // Constraints may name the bound variable, which is only known later.
  std::vector<std::pair<std::string, SourceSpan>> constraint_names;
  if (ts.accept_ident("require")) {
    do {
      I.constraints.push_back(parse_linexpr(ts, [&](const std::string& n, const SourceSpan& s) {
        constraint_names.emplace_back(n, s);
      }));
      ts.expect_punct(">=");
      const Token& zero = ts.peek();
      if (ts.expect_int("0") != 0) ts.fail_at(zero, "constraints must have the form 'expr >= 0'");
    } while (ts.accept_punct(","));
  }
  ts.expect_punct("::");

  std::string bound;
  if (ts.is_ident("sum") && ts.is_punct("(", 1)) {
    ts.next();
    ts.next();
    const Token& b = ts.expect_ident("bound variable");
    if (declared.count(b.text)) ts.fail_at(b, "bound variable '" + b.text + "' shadows a parameter");
    if (reserved_names().count(b.text)) ts.fail_at(b, "'" + b.text + "' is reserved");
    bound = b.text;
    SumExpr s;
    s.bound_var = bound;
    ts.expect_punct(",");
    s.lower = parse_linexpr(ts, params_only);
    ts.expect_punct(",");
    s.upper = parse_linexpr(ts, params_only);
    ts.expect_punct(")");
    ts.expect_punct("[");
    s.body = parse_term(ts, [&](const std::string& name, const SourceSpan& span) {
      if (name != bound) params_only(name, span);
    });
    ts.expect_punct("]");
    I.lhs = std::move(s);
  } else {
    I.lhs = parse_term(ts, params_only);
  }
  for (const auto& [name, span] : constraint_names) {
    if (name != bound) params_only(name, span);
  }
  ts.expect_punct("==");
  I.rhs = parse_term(ts, params_only);
  if (ts.is_punct("+") || ts.is_punct("-")) {
    ts.fail("multi-term right-hand sides are not supported");
  }
  return I;
}

Identity parse_identity(std::string_view text) {
  TokenStream ts(text);
  Identity I = parse_identity_decl(ts, "identity");
  if (!ts.at_end()) ts.fail("unexpected " + describe(ts.peek()), {"end of input"});
  return I;
}

std::string print_term(const Term& t) {
  std::string out;
  if (t.sign_exponent) out += "(-1)^(" + t.sign_exponent->to_string() + ")*";
  if (t.factors.empty()) return out + "C(0,0)";
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    if (i) out += "*";
    out += "C(" + t.factors[i].upper.to_string() + "," + t.factors[i].lower.to_string() + ")";
  }
  return out;
}

std::string print_side(const Side& s) {
  if (const auto* sum = std::get_if<SumExpr>(&s)) {
    return "sum(" + sum->bound_var + "," + sum->lower.to_string() + "," + sum->upper.to_string() + ")[" +
           print_term(sum->body) + "]";
  }
  return print_term(std::get<Term>(s));
}

std::string print_identity(const Identity& I, std::string_view keyword) {
  Identity c = canonicalize(I);
  std::string out = std::string(keyword) + " " + c.name + " params(";
  for (std::size_t i = 0; i < c.params.size(); ++i) {
    if (i) out += ",";
    out += c.params[i];
  }
  out += ")";
  for (std::size_t i = 0; i < c.constraints.size(); ++i) {
    out += i ? ", " : " require ";
    out += c.constraints[i].to_string() + ">=0";
  }
  out += " :: " + print_side(c.lhs) + " == " + print_term(c.rhs);
  return out;
}

std::string print_chain_step(const ChainStep& s) {
  auto side = [&] { return s.side == IdentitySide::Lhs ? std::string("lhs") : std::string("rhs"); };
  switch (s.kind) {
    case ChainStep::Kind::BalanceSigns: return "balance_signs";
    case ChainStep::Kind::Subst: {
      std::string out = "subst{";
      bool first = true;
      for (const auto& [k, v] : s.subst) {
        if (!first) out += ",";
        first = false;
        out += k + "=" + v.to_string();
      }
      return out + "}";
    }
    case ChainStep::Kind::Rewrite: {
      std::string out = to_string(s.rule) + "(" + side() + "," + std::to_string(s.first);
      if (s.rule == RewriteRule::TrinomialRevision) out += "," + std::to_string(s.second);
      return out + ")";
    }
  }
  return "?";
}

namespace {

ChainStep parse_chain_step(TokenStream& ts) {
  ChainStep step;
  step.span = ts.peek().span;
  const Token& word = ts.expect_ident("rewrite step");
  if (word.text == "balance_signs") {
    step.kind = ChainStep::Kind::BalanceSigns;
  } else if (word.text == "subst") {
    step.kind = ChainStep::Kind::Subst;
    step.subst = parse_assignments(ts);
  } else {
    static const std::map<std::string, RewriteRule> rules = {
        {"upper_negation", RewriteRule::UpperNegation},
        {"second_symmetry", RewriteRule::SecondSymmetry},
        {"symmetry", RewriteRule::Symmetry},
        {"trinomial", RewriteRule::TrinomialRevision},
    };
    auto it = rules.find(word.text);
    if (it == rules.end()) {
      ts.fail_at(word, "unknown rewrite step '" + word.text + "'",
                 {"upper_negation", "second_symmetry", "symmetry", "trinomial", "subst", "balance_signs"});
    }
    step.rule = it->second;
    ts.expect_punct("(");
    if (ts.accept_ident("lhs")) {
      step.side = IdentitySide::Lhs;
    } else if (ts.accept_ident("rhs")) {
      step.side = IdentitySide::Rhs;
    } else {
      ts.fail("unexpected " + describe(ts.peek()), {"lhs", "rhs"});
    }
    auto position = [&] {
      ts.expect_punct(",");
      const Token& t = ts.peek();
      long long v = ts.expect_int("factor position");
      if (v < 1) ts.fail_at(t, "factor positions start at 1");
      return static_cast<std::size_t>(v);
    };
    step.first = position();
    if (step.rule == RewriteRule::TrinomialRevision) step.second = position();
    ts.expect_punct(")");
  }
  step.span = ts.span_from(step.span);
  return step;
}

std::vector<ChainStep> parse_chain(TokenStream& ts) {
  std::vector<ChainStep> out;
  ts.expect_punct("[");
  if (ts.accept_punct("]")) return out;
  do {
    out.push_back(parse_chain_step(ts));
  } while (ts.accept_punct(","));
  ts.expect_punct("]");
  return out;
}

SpecializationDecl parse_specialization(TokenStream& ts) {
  SpecializationDecl d;
  d.span = ts.peek().span;
  ts.expect_keyword("specializes");
  d.target = ts.expect_ident("identity name").text;
  ts.expect_keyword("from");
  d.parent = ts.expect_ident("identity name").text;
  ts.expect_keyword("with");
  d.map = parse_assignments(ts);
  while (true) {
    if (ts.accept_ident("grid")) {
      ts.expect_punct("{");
      do {
        const Token& name = ts.expect_ident("parameter name");
        ts.expect_punct("=");
        const Token& lo_tok = ts.peek();
        long long lo = ts.expect_int();
        ts.expect_punct("..");
        long long hi = ts.expect_int();
        if (lo > hi) ts.fail_at(lo_tok, "empty range " + std::to_string(lo) + ".." + std::to_string(hi));
        d.grid[name.text] = {lo, hi};
      } while (ts.accept_punct(","));
      ts.expect_punct("}");
    } else if (ts.accept_ident("swap")) {
      d.swap = parse_assignments(ts);
    } else if (ts.accept_ident("via")) {
      d.via = ts.expect_ident("lemma name").text;
    } else if (ts.is_ident("rewrite")) {
      ts.next();
      if (ts.accept_ident("source")) {
        d.source_chain = parse_chain(ts);
      } else if (ts.accept_ident("parent")) {
        d.parent_chain = parse_chain(ts);
      } else {
        ts.fail("unexpected " + describe(ts.peek()), {"source", "parent"});
      }
    } else {
      break;
    }
  }
  d.span = ts.span_from(d.span);
  return d;
}

}  // namespace

CatalogText parse_catalog(std::string_view text) {
  TokenStream ts(text);
  CatalogText out;
  std::map<std::string, SourceSpan> seen;
  auto record = [&](const Token& name_tok) {
    auto [it, inserted] = seen.emplace(name_tok.text, name_tok.span);
    if (!inserted) {
      throw ParseError("duplicate name '" + name_tok.text + "' (first declared at " + it->second.to_string() + ")",
                       name_tok.span);
    }
  };
  while (!ts.at_end()) {
    if (ts.is_ident("identity") || ts.is_ident("lemma")) {
      const bool lemma = ts.is_ident("lemma");
      Token name_tok = ts.peek(1);
      Identity I = parse_identity_decl(ts, lemma ? "lemma" : "identity");
      record(name_tok);
      (lemma ? out.lemmas : out.identities).push_back(std::move(I));
    } else if (ts.is_ident("specializes")) {
      out.specializations.push_back(parse_specialization(ts));
    } else {
      ts.fail("unexpected " + describe(ts.peek()), {"identity", "lemma", "specializes"});
    }
  }

  auto find = [](const std::vector<Identity>& list, const std::string& name) -> const Identity* {
    for (const auto& I : list) {
      if (I.name == name) return &I;
    }
    return nullptr;
  };
  std::set<std::string> claimed;
  for (const auto& d : out.specializations) {
    const Identity* target = find(out.identities, d.target);
    const Identity* parent = find(out.identities, d.parent);
    if (!target) throw ParseError("unknown identity '" + d.target + "'", d.span);
    if (!parent) throw ParseError("unknown identity '" + d.parent + "'", d.span);
    if (!claimed.insert(d.target).second) throw ParseError("duplicate specialization of '" + d.target + "'", d.span);
    if (d.via && !find(out.lemmas, *d.via)) throw ParseError("unknown lemma '" + *d.via + "'", d.span);
    for (const auto& [p, img] : d.map) {
      if (std::find(parent->params.begin(), parent->params.end(), p) == parent->params.end()) {
        throw ParseError("'" + p + "' is not a parameter of " + d.parent, d.span);
      }
      for (const auto& v : img.vars()) {
        if (std::find(target->params.begin(), target->params.end(), v) == target->params.end()) {
          throw ParseError("'" + v + "' is not a parameter of " + d.target, d.span);
        }
      }
    }
    for (const auto& [p, range] : d.grid) {
      if (std::find(target->params.begin(), target->params.end(), p) == target->params.end()) {
        throw ParseError("grid names '" + p + "', which is not a parameter of " + d.target, d.span);
      }
    }
  }
  return out;
}

}  // namespace binomid
