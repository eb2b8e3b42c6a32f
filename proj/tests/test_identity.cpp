#include <doctest.h>

#include "binomid/catalog.hpp"
#include "binomid/dsl.hpp"
#include "binomid/identity.hpp"
#include "binomid/rewrite.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace binomid;

namespace {

LinExpr L(std::string_view text) {
  TokenStream ts(text);
  return parse_linexpr(ts);
}

Term T(std::string_view text) {
  TokenStream ts(text);
  return parse_term(ts);
}

ParamEnv E(std::initializer_list<std::pair<const char*, long long>> kv) {
  ParamEnv e;
  for (auto [k, v] : kv) e[k] = v;
  return e;
}

const Catalog& cat() {
  static const Catalog c = Catalog::load_builtin();
  return c;
}

}  // namespace

TEST_CASE("linexpr normal form") {
  LinExpr e = LinExpr::var("b") + LinExpr::var("a") - LinExpr::var("b") + 3;
  CHECK(e.coeffs().size() == 1);
  CHECK(e.to_string() == "a+3");
  CHECK(L("2*k+3-k").to_string() == "k+3");
  CHECK(L("-k-1").to_string() == "-k-1");
  CHECK(L("0").to_string() == "0");
  CHECK(L("a-a") == LinExpr(0));
}

TEST_CASE("eval_linexpr examples") {
  CHECK(eval_linexpr(L("a+b-c-d"), E({{"a", 3}, {"b", 2}, {"c", 1}, {"d", 1}})) == 3);
  CHECK(eval_linexpr(L("n-k"), E({{"n", 2}, {"k", 5}})) == -3);
  CHECK(eval_linexpr(LinExpr(0), {}) == 0);
  CHECK(eval_linexpr(LinExpr(0), E({{"z", 9}})) == 0);
}

TEST_CASE("unbound variable names the variable") {
  try {
    eval_linexpr(L("a+zeta"), E({{"a", 1}}));
    FAIL("expected an error");
  } catch (const EvalError& e) {
    CHECK(std::string(e.what()).find("zeta") != std::string::npos);
  }
}

TEST_CASE("eval_term examples") {
  CHECK(eval_term(T("C(3,1)*C(2,1)"), {}) == 6);
  CHECK(eval_term(T("(-1)^(k)*C(5,k)"), E({{"k", 3}})) == -10);
  CHECK(eval_term(T("C(-1,2)*C(2,2)"), {}) == 1);
}

TEST_CASE("eval_identity examples") {
  const Identity& chugen = *cat().find("chugen");
  const Identity& chu2gen = *cat().find("chu2gen");
  auto v = eval_identity(chugen, E({{"a", 3}, {"b", 2}, {"c", 1}, {"d", 1}, {"n", 2}}));
  CHECK(v.lhs == 6);
  CHECK(v.rhs == 6);
  CHECK(v.holds);
  v = eval_identity(chu2gen, E({{"a", 2}, {"b", 3}, {"c", 1}, {"d", 1}, {"m", 1}}));
  CHECK(v.lhs == 18);
  CHECK(v.rhs == 18);
  CHECK(v.holds);
  v = eval_identity(chugen, E({{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}, {"n", 0}}));
  CHECK(v.lhs == 1);
  CHECK(v.rhs == 1);
  CHECK_THROWS_AS(eval_identity(chugen, E({{"a", 0}})), EvalError);
}

TEST_CASE("constraint violation is an error") {
  const Identity& s2 = *cat().find("stanley2");
  CHECK_THROWS_AS(eval_identity(s2, E({{"p", 0}, {"q", 0}, {"a", 2}, {"b", 1}})), EvalError);
  CHECK_NOTHROW(eval_identity(s2, E({{"p", 0}, {"q", 0}, {"a", 1}, {"b", 2}})));
}

TEST_CASE("empty sums are zero") {
  Identity I = parse_identity("identity e params(n) :: sum(k,n,n-1)[C(n,k)] == C(n,n)");
  auto v = eval_identity(I, E({{"n", 3}}));
  CHECK(v.lhs == 0);
  CHECK(v.rhs == 1);
  CHECK_FALSE(v.holds);
}

TEST_CASE("canonicalize examples") {
  CHECK(canonicalize(T("C(b,d)*C(a,c)")) == T("C(a,c)*C(b,d)"));
  Term s = canonicalize(T("(-1)^(2*k+3)*C(n,k)"));
  REQUIRE(s.sign_exponent);
  CHECK(*s.sign_exponent == LinExpr(1));
  for (const auto& I : cat().identities()) CHECK(print_identity(canonicalize(canonicalize(I))) == print_identity(canonicalize(I)));
}

TEST_CASE("canonicalize is idempotent and eval-invariant on random identities") {
  gen::Gen g(11);
  for (int i = 0; i < 300; ++i) {
    Identity I = gen::identity(g);
    Identity c1 = canonicalize(I);
    Identity c2 = canonicalize(c1);
    CHECK(structurally_equal(c1, c2, false));
    CHECK(print_identity(c1) == print_identity(c2));
    for (int j = 0; j < 5; ++j) {
      ParamEnv env = gen::env(g, I.params, -4, 4);
      INFO(print_identity(I));
      CHECK(eval_side(I.lhs, env) == eval_side(c1.lhs, env));
      CHECK(eval_term(I.rhs, env) == eval_term(c1.rhs, env));
    }
  }
}

TEST_CASE("sign parity normalization is eval-invariant") {
  gen::Gen g(12);
  std::vector<std::string> vars{"a", "b", "k"};
  for (int i = 0; i < 500; ++i) {
    Term t;
    t.sign_exponent = gen::linexpr(g, vars, 3, 5, 9);
    t.factors.push_back({LinExpr(1), LinExpr(0)});
    Term c = canonicalize(t);
    ParamEnv env = gen::env(g, vars, -10, 10);
    CHECK(eval_term(t, env) == eval_term(c, env));
    if (c.sign_exponent) {
      CHECK(c.sign_exponent->constant() >= 0);
      CHECK(c.sign_exponent->constant() <= 1);
      for (const auto& [v, k] : c.sign_exponent->coeffs()) CHECK(k == 1);
    }
  }
}

TEST_CASE("substitution examples") {
  const auto* eq11 = cat().find("eq11");
  const auto* nan1 = cat().find("nanjundiah1");
  Identity s = substitute(*eq11, {{{"m", 0}, {"d", 0}}, {"a", "b", "p"}}, "s");
  CHECK(structurally_equal(s, *nan1, true));
  CHECK(structurally_equal(s, *nan1, false));

  const auto* eq4 = cat().find("eq4");
  Substitution sigma{{{"a", L("m-x+y")}, {"b", L("n+x-y")}, {"d", 0}, {"p", L("x")}}, {"m", "n", "x", "y"}};
  CHECK(structurally_equal(substitute(*eq4, sigma, "s"), *cat().find("nanjundiah2"), true));

  for (const auto& I : cat().identities()) {
    Substitution id;
    for (const auto& p : I.params) id.images[p] = LinExpr::var(p);
    id.target_params = I.params;
    CHECK(print_identity(substitute(I, id, I.name)) == print_identity(canonicalize(I)));
  }
}

TEST_CASE("substitution rejects unmapped parameters") {
  const auto* eq11 = cat().find("eq11");
  CHECK_THROWS_AS(substitute(*eq11, {{{"m", 0}}, {"a", "b", "p"}}, "s"), EvalError);
}

TEST_CASE("substitution homomorphism over the catalog maps") {
  gen::Gen g(13);
  for (const auto& claim : cat().claims()) {
    const Identity& parent = *cat().find(claim.parent);
    const Identity& target = *cat().find(claim.target);
    Identity s = substitute(parent, {claim.map, target.params}, "s");
    for (int i = 0; i < 200; ++i) {
      ParamEnv env = gen::env(g, target.params, -6, 6);
      ParamEnv composed;
      for (const auto& p : parent.params) {
        auto it = claim.map.find(p);
        composed[p] = it != claim.map.end() ? it->second.eval(env) : env.at(p);
      }
      INFO(claim.target << " " << i);
      CHECK(eval_side(s.lhs, env) == eval_side(parent.lhs, composed));
      CHECK(eval_term(s.rhs, env) == eval_term(parent.rhs, composed));
    }
  }
}

TEST_CASE("trinomial revision examples") {
  Term t = rewrite_trinomial_revision(T("C(b,n-k)*C(n-k,d)"), 0, 1);
  CHECK(t == T("C(b,d)*C(b-d,n-k-d)"));
  t = rewrite_trinomial_revision(T("C(a,k)*C(k,c)"), 0, 1);
  CHECK(t == T("C(a,c)*C(a-c,k-c)"));
  ParamEnv env = E({{"a", 5}, {"k", 3}, {"c", 2}});
  CHECK(eval_term(T("C(a,k)*C(k,c)"), env) == 30);
  CHECK(eval_term(t, env) == 30);
  CHECK_THROWS_AS(rewrite_trinomial_revision(T("C(a,k)*C(j,c)"), 0, 1), RewriteError);
  CHECK_THROWS_AS(rewrite_trinomial_revision(T("C(a,k)"), 0, 3), RewriteError);
}

TEST_CASE("symmetry rule examples") {
  Term t = rewrite_upper_negation(T("C(p+q+k,k)"), 0);
  CHECK(canonicalize(t) == canonicalize(T("(-1)^(k)*C(-p-q-1,k)")));
  Rewritten r = rewrite_second_symmetry(T("C(p+a-k,p)"), 0);
  CHECK(canonicalize(r.term) == canonicalize(T("(-1)^(a-k)*C(-p-1,a-k)")));
  CHECK(r.side_conditions.size() == 2);
  Rewritten s = rewrite_symmetry(T("C(n,k)"), 0);
  CHECK(s.term == T("C(n,n-k)"));
  REQUIRE(s.side_conditions.size() == 1);
  CHECK(s.side_conditions[0] == L("n"));
}

TEST_CASE("upper negation is an involution") {
  gen::Gen g(14);
  for (int i = 0; i < 200; ++i) {
    Term t = gen::term(g, {"a", "b", "k"});
    const std::size_t pos = static_cast<std::size_t>(g.int_in(0, static_cast<long long>(t.factors.size()) - 1));
    Term twice = rewrite_upper_negation(rewrite_upper_negation(t, pos), pos);
    CHECK(canonicalize(twice) == canonicalize(t));
  }
}

TEST_CASE("rewrites are value preserving on random terms") {
  gen::Gen g(15);
  const std::vector<std::string> vars{"a", "b", "c", "k"};
  for (int i = 0; i < 500; ++i) {
    ParamEnv env = gen::env(g, vars, -10, 10);
    Term t = gen::term(g, vars, 3);
    const std::size_t pos = static_cast<std::size_t>(g.int_in(0, static_cast<long long>(t.factors.size()) - 1));
    const BigInt before = eval_term(t, env);
    INFO(print_term(t));

    CHECK(eval_term(rewrite_upper_negation(t, pos), env) == before);

    Rewritten ss = rewrite_second_symmetry(t, pos);
    bool ok = std::all_of(ss.side_conditions.begin(), ss.side_conditions.end(),
                          [&](const LinExpr& e) { return e.eval(env) >= 0; });
    if (ok) CHECK(eval_term(ss.term, env) == before);

    Rewritten sy = rewrite_symmetry(t, pos);
    if (sy.side_conditions[0].eval(env) >= 0) CHECK(eval_term(sy.term, env) == before);

    // Plant a trinomial pattern C(A,K)*C(K,B) in front of t.
    Term tri = t;
    LinExpr A = gen::linexpr(g, vars), K = gen::linexpr(g, vars), Bx = gen::linexpr(g, vars);
    tri.factors.insert(tri.factors.begin(), {{A, K}, {K, Bx}});
    CHECK(eval_term(rewrite_trinomial_revision(tri, 0, 1), env) == eval_term(tri, env));
  }
}

TEST_CASE("second symmetry counterexample outside its side condition") {
  // n = k = -1 satisfies n-k >= 0 but not k >= 0, and the rule fails there.
  ParamEnv env = E({{"n", -1}, {"k", -1}});
  Term t = T("C(n,k)");
  Rewritten r = rewrite_second_symmetry(t, 0);
  CHECK(eval_term(t, env) == 0);
  CHECK(eval_term(r.term, env) == 1);
  CHECK(std::any_of(r.side_conditions.begin(), r.side_conditions.end(),
                    [&](const LinExpr& e) { return e.eval(env) < 0; }));
}

TEST_CASE("apply_rewrite records side conditions as constraints") {
  Identity I = parse_identity("identity t params(n,k) :: C(n,k) == C(n,n-k)");
  Identity r = apply_rewrite(I, IdentitySide::Lhs, RewriteRule::SecondSymmetry, 0);
  CHECK(r.constraints.size() == I.constraints.size() + 2);
}

TEST_CASE("structural equality") {
  const Identity& chugen = *cat().find("chugen");
  Identity renamed = parse_identity(
      "identity r params(u,v,w,s,t) :: sum(j,0,t)[C(u,j)*C(v,t-j)*C(j,w)*C(t-j,s)] == C(u+v-w-s,t-w-s)*C(u,w)*C(v,s)");
  CHECK(structurally_equal(chugen, renamed, true));
  CHECK_FALSE(structurally_equal(chugen, renamed, false));
  auto map = find_renaming(chugen, renamed);
  REQUIRE(map);
  CHECK(map->at("n") == "t");
  CHECK_FALSE(structurally_equal(chugen, *cat().find("chu2gen"), true));
  CHECK(structurally_equal(chugen, chugen, false));
}

TEST_CASE("structural equality ignores bound variable spelling and factor order") {
  Identity a = parse_identity("identity a params(n) :: sum(k,0,n)[C(n,k)*C(k,1)] == C(n,1)*C(2,1)");
  Identity b = parse_identity("identity b params(n) :: sum(j,0,n)[C(j,1)*C(n,j)] == C(2,1)*C(n,1)");
  CHECK(structurally_equal(a, b, false));
}

TEST_CASE("catalog entries agree with the hand-written oracle") {
  for (const auto& o : oracle::identities()) {
    const Identity* I = cat().find(o.name);
    REQUIRE(I != nullptr);
    std::vector<std::string> ps = o.params;
    std::vector<std::string> ip = I->params;
    std::sort(ps.begin(), ps.end());
    std::sort(ip.begin(), ip.end());
    REQUIRE(ps == ip);
    // Every parameter on -2..4.
    const std::size_t n = o.params.size();
    std::vector<long long> v(n, 0);
    for (long long idx = 0;; ++idx) {
      oracle::Env env;
      long long rest = idx;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = rest % 7 - 2;
        rest /= 7;
      }
      if (rest) break;
      ParamEnv penv;
      for (std::size_t i = 0; i < n; ++i) {
        env[o.params[i]] = v[i];
        penv[o.params[i]] = v[i];
      }
      auto [lhs, rhs] = o.sides(env);
      INFO(o.name);
      CHECK(eval_side(I->lhs, penv) == lhs);
      CHECK(eval_term(I->rhs, penv) == rhs);
      if (o.domain(env) && std::all_of(v.begin(), v.end(), [](long long x) { return x >= 0; })) CHECK(lhs == rhs);
    }
  }
}
