#include "oracle.hpp"

#include <stdexcept>

namespace oracle {

Int binom(long long n, long long k) {
  if (k < 0) return 0;
  Int r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

namespace {

using C = Int (*)(long long, long long);
constexpr C B = binom;

template <class F>
Int sum(long long lo, long long hi, F f) {
  Int s = 0;
  for (long long k = lo; k <= hi; ++k) s += f(k);
  return s;
}

auto unrestricted = [](const Env&) { return true; };

std::vector<IdentityOracle> build() {
  std::vector<IdentityOracle> v;
  auto add = [&](std::string name, std::vector<std::string> params,
                 std::function<std::pair<Int, Int>(const Env&)> f,
                 std::function<bool(const Env&)> dom = unrestricted) {
    v.push_back({std::move(name), std::move(params), std::move(dom), std::move(f)});
  };

  add("chugen", {"a", "b", "c", "d", "n"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), c = e.at("c"), d = e.at("d"), n = e.at("n");
    return std::pair{sum(0, n, [&](long long k) { return B(a, k) * B(b, n - k) * B(k, c) * B(n - k, d); }),
                     Int(B(a + b - c - d, n - c - d) * B(a, c) * B(b, d))};
  });
  add("chu2gen", {"a", "b", "c", "d", "m"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), c = e.at("c"), d = e.at("d"), m = e.at("m");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(b, m + k) * B(k, c) * B(m + k, d); }),
                     Int(B(a + b - c - d, m + a - d) * B(a, c) * B(b, d))};
  });
  add("eq1", {"b", "c", "d", "n", "p"}, [](const Env& e) {
    long long b = e.at("b"), c = e.at("c"), d = e.at("d"), n = e.at("n"), p = e.at("p");
    return std::pair{sum(0, n, [&](long long k) { return B(c + d - b, k - p) * B(b, n - k) * B(k, c) * B(n - k, d); }),
                     Int(B(n - b, n - d - p) * B(p, c + d + p - n) * B(b, d))};
  });
  add("eq2", {"a", "c", "d", "n", "p"}, [](const Env& e) {
    long long a = e.at("a"), c = e.at("c"), d = e.at("d"), n = e.at("n"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(c + d - a, p + k) * B(k, c) * B(n - k, d); }),
                     Int(B(n + a + p - c - d, a + p) * B(n - a, d - a - p) * B(a, c))};
  });
  add("eq3", {"a", "c", "d", "n", "p"}, [](const Env& e) {
    long long a = e.at("a"), c = e.at("c"), d = e.at("d"), n = e.at("n"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(c + d - a, p - k) * B(k, c) * B(n - k, d); }),
                     Int(B(n - p, c + d - p) * B(n - a, p - c) * B(a, c))};
  });
  add("eq4", {"a", "b", "d", "n", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), d = e.at("d"), n = e.at("n"), p = e.at("p");
    return std::pair{sum(0, n, [&](long long k) { return B(a, k) * B(b, n - k) * B(p + k, a + b - d) * B(n - k, d); }),
                     Int(B(n + p - b, n - d) * B(p, a + b - n) * B(b, d))};
  });
  add("eq5", {"a", "b", "d", "n", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), d = e.at("d"), n = e.at("n"), p = e.at("p");
    return std::pair{sum(0, n, [&](long long k) { return B(a, k) * B(b, n - k) * B(p - k, a + b - d) * B(n - k, d); }),
                     Int(B(d + p - n, a + b - n) * B(p - a, n - d) * B(b, d))};
  });
  add("eq6", {"a", "b", "c", "n", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), c = e.at("c"), n = e.at("n"), p = e.at("p");
    return std::pair{sum(0, n, [&](long long k) { return B(a, k) * B(b, n - k) * B(k, c) * B(p + k, a + b - c); }),
                     Int(B(n + p - b, n - c) * B(p + c, a + b - n) * B(a, c))};
  });
  add("eq7", {"a", "b", "c", "n", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), c = e.at("c"), n = e.at("n"), p = e.at("p");
    return std::pair{sum(0, n, [&](long long k) { return B(a, k) * B(b, n - k) * B(k, c) * B(p - k, a + b - c); }),
                     Int(B(p - n, a + b - n) * B(p - a, n - c) * B(a, c))};
  });
  add("eq8", {"a", "b", "c", "m", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), c = e.at("c"), m = e.at("m"), p = e.at("p");
    return std::pair{sum(0, a + p, [&](long long k) { return B(a, k - p) * B(b, m + k) * B(k, c) * B(m + k, m); }),
                     Int(B(a + b - c - m, a + p - c) * B(b - m, c) * B(b, m))};
  });
  add("eq9", {"a", "c", "d", "m", "p"}, [](const Env& e) {
    long long a = e.at("a"), c = e.at("c"), d = e.at("d"), m = e.at("m"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(c + d - a, p + k) * B(k, c) * B(m + k, d); }),
                     Int(B(m - p, d - a - p) * B(m + c, a + p) * B(a, c))};
  });
  add("eq10", {"a", "c", "d", "m", "p"}, [](const Env& e) {
    long long a = e.at("a"), c = e.at("c"), d = e.at("d"), m = e.at("m"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(c + d - a, p - k) * B(k, c) * B(m + k, d); }),
                     Int(B(m + a + p - c - d, p - c) * B(m + c, c + d - p) * B(a, c))};
  });
  add("eq11", {"a", "b", "d", "m", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), d = e.at("d"), m = e.at("m"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(b, m + k) * B(p + k, a + b - d) * B(m + k, d); }),
                     Int(B(d + p - m, b - m) * B(p, m + a - d) * B(b, d))};
  });
  add("eq12", {"a", "b", "d", "m", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), d = e.at("d"), m = e.at("m"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(b, m + k) * B(p - k, a + b - d) * B(m + k, d); }),
                     Int(B(m + p - b, m + a - d) * B(p - a, b - m) * B(b, d))};
  });
  add("eq13", {"a", "b", "c", "m", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), c = e.at("c"), m = e.at("m"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(b, m + k) * B(k, c) * B(p + k, a + b - c); }),
                     Int(B(p - m, b - c - m) * B(p + c, m + a) * B(a, c))};
  });
  add("eq14", {"a", "b", "c", "m", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), c = e.at("c"), m = e.at("m"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(b, m + k) * B(k, c) * B(p - k, a + b - c); }),
                     Int(B(m + p - b, m + a) * B(p - a, b - m - c) * B(a, c))};
  });
  add("nanjundiah1", {"a", "b", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(b, k) * B(p + k, a + b); }), Int(B(p, a) * B(p, b))};
  });
  add("nanjundiah2", {"m", "n", "x", "y"}, [](const Env& e) {
    long long m = e.at("m"), n = e.at("n"), x = e.at("x"), y = e.at("y");
    return std::pair{sum(0, n, [&](long long k) { return B(m - x + y, k) * B(n + x - y, n - k) * B(x + k, m + n); }),
                     Int(B(x, m) * B(y, n))};
  });
  add("bizley1", {"a", "b", "d", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), d = e.at("d"), p = e.at("p");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(b, k - d) * B(p + k, a + b); }),
                     Int(B(p, a - d) * B(p + d, b + d))};
  });
  add("bizley2", {"a", "b", "n", "p"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), n = e.at("n"), p = e.at("p");
    return std::pair{sum(0, n, [&](long long k) { return B(a, k) * B(b, n - k) * B(p + k, a + b); }),
                     Int(B(p, a + b - n) * B(p - b + n, n))};
  });
  add("gould", {"a", "b", "x"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), x = e.at("x");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(b, k) * B(a + b + x + k, a + b); }),
                     Int(B(a + b + x, a) * B(a + b + x, b))};
  });
  add("suranyi", {"a", "b", "x"}, [](const Env& e) {
    long long a = e.at("a"), b = e.at("b"), x = e.at("x");
    return std::pair{sum(0, a, [&](long long k) { return B(a, k) * B(b, k) * B(a + b + x - k, a + b); }),
                     Int(B(x + a, a) * B(x + b, b))};
  });
  add("takacs", {"a", "m", "n", "p"}, [](const Env& e) {
    long long a = e.at("a"), m = e.at("m"), n = e.at("n"), p = e.at("p");
    return std::pair{sum(0, n, [&](long long k) { return B(a, k) * B(m - a, n - k) * B(p + k, m); }),
                     Int(B(p, m - n) * B(n + a + p - m, n))};
  });
  add("riordan", {"m", "n", "x"}, [](const Env& e) {
    long long m = e.at("m"), n = e.at("n"), x = e.at("x");
    return std::pair{sum(0, n, [&](long long k) { return B(n, k) * B(m, n - k) * B(x + n - k, n + m); }),
                     Int(B(x, m) * B(x, n))};
  });
  add("stanley1", {"p", "q", "a", "b"}, [](const Env& e) {
    long long p = e.at("p"), q = e.at("q"), a = e.at("a"), b = e.at("b");
    return std::pair{sum(0, a, [&](long long k) { return B(p + q + k, k) * B(p, a - k) * B(q, b - k); }),
                     Int(B(p + b, a) * B(q + a, b))};
  });
  // As printed the sum runs over 0..a; it only holds for a <= b.
  add(
      "stanley2", {"p", "q", "a", "b"},
      [](const Env& e) {
        long long p = e.at("p"), q = e.at("q"), a = e.at("a"), b = e.at("b");
        return std::pair{sum(0, a,
                             [&](long long k) {
                               Int t = B(p + q + 1, k) * B(p + a - k, p) * B(q + b - k, q);
                               return k % 2 ? Int(-t) : t;
                             }),
                         Int(B(p + a - b, a) * B(q + b - a, b))};
      },
      [](const Env& e) { return e.at("b") >= e.at("a"); });
  return v;
}

}  // namespace

const std::vector<IdentityOracle>& identities() {
  static const std::vector<IdentityOracle> v = build();
  return v;
}

const IdentityOracle& identity(const std::string& name) {
  for (const auto& o : identities())
    if (o.name == name) return o;
  throw std::out_of_range("no oracle for " + name);
}

Int series_coeff_one_plus_x(long long n, long long k) {
  if (k < 0) return 0;
  // coefficient vector of (1+x)^n mod x^{k+1}
  std::vector<Int> c(k + 1, 0);
  c[0] = 1;
  const long long reps = n >= 0 ? n : -n;
  for (long long r = 0; r < reps; ++r) {
    if (n > 0) {
      for (long long i = k; i >= 1; --i) c[i] += c[i - 1];
    } else {
      // divide by (1+x): c'[i] = c[i] - c'[i-1]
      for (long long i = 1; i <= k; ++i) c[i] -= c[i - 1];
    }
  }
  return c[k];
}

}  // namespace oracle
