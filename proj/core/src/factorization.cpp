#include "qstc/factorization.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qstc/errors.hpp"
#include "qstc/modular.hpp"

namespace qstc {
namespace {

namespace mod = modular;

// Polynomials with coefficients in [0, m), lowest degree first.
using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zreduce(ZPoly a, const mpz_class& m) {
  for (auto& c : a) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  ztrim(a);
  return a;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = (i < a.size() ? a[i] : mpz_class(0)) + (i < b.size() ? b[i] : mpz_class(0));
  }
  return zreduce(std::move(r), m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = (i < a.size() ? a[i] : mpz_class(0)) - (i < b.size() ? b[i] : mpz_class(0));
  }
  return zreduce(std::move(r), m);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return zreduce(std::move(r), m);
}

ZPoly zscale(const ZPoly& a, const mpz_class& s, const mpz_class& m) {
  ZPoly r = a;
  for (auto& c : r) c *= s;
  return zreduce(std::move(r), m);
}

// Division by a monic polynomial modulo m.
void zdivrem(const ZPoly& a, const ZPoly& h, ZPoly& q, ZPoly& r, const mpz_class& m) {
  r = a;
  if (a.size() < h.size()) {
    q.clear();
    return;
  }
  q.assign(a.size() - h.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    const mpz_class c = r[i + h.size() - 1];
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < h.size(); ++j) {
      mpz_submul(r[i + j].get_mpz_t(), c.get_mpz_t(), h[j].get_mpz_t());
      mpz_mod(r[i + j].get_mpz_t(), r[i + j].get_mpz_t(), m.get_mpz_t());
    }
  }
  ztrim(q);
  ztrim(r);
}

ZPoly from_modp(const mod::Poly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

ZPoly from_int(const IntPoly& f, const mpz_class& m) { return zreduce(f.coeffs(), m); }

IntPoly symmetric(const ZPoly& a, const mpz_class& m) {
  const mpz_class half = m / 2;
  std::vector<mpz_class> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] > half ? a[i] - m : a[i];
  return IntPoly(std::move(r));
}

// One quadratic Hensel step: f = g h, s g + t h = 1 (mod m) -> (mod m^2).
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const mpz_class& m) {
  const mpz_class m2 = m * m;
  const ZPoly e = zsub(zreduce(f, m2), zmul(g, h, m2), m2);
  ZPoly q, r;
  zdivrem(zmul(s, e, m2), h, q, r, m2);
  const ZPoly g2 = zadd(g, zadd(zmul(t, e, m2), zmul(q, g, m2), m2), m2);
  const ZPoly h2 = zadd(h, r, m2);
  const ZPoly b = zsub(zadd(zmul(s, g2, m2), zmul(t, h2, m2), m2), ZPoly{1}, m2);
  ZPoly c, d;
  zdivrem(zmul(s, b, m2), h2, c, d, m2);
  s = zsub(s, d, m2);
  t = zsub(t, zadd(zmul(t, b, m2), zmul(c, g2, m2), m2), m2);
  g = g2;
  h = h2;
}

// Lifts the factorization f = lc * prod(local) (mod p) to modulus p^(2^steps)
// and returns monic lifted factors in the order of `local`.
std::vector<ZPoly> lift_all(const ZPoly& f, const std::vector<mod::Poly>& local,
                            const mod::PrimeField& F, int steps, const mpz_class& target) {
  if (local.size() == 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), target.get_mpz_t());
    return {zscale(f, inv, target)};
  }
  const std::size_t half = local.size() / 2;
  const std::vector<mod::Poly> left(local.begin(), local.begin() + static_cast<long>(half));
  const std::vector<mod::Poly> right(local.begin() + static_cast<long>(half), local.end());

  const std::uint64_t lc = F.from(f.back());
  mod::Poly g0{lc};
  for (const auto& a : left) g0 = mod::mul(g0, a, F);
  mod::Poly h0{1};
  for (const auto& a : right) h0 = mod::mul(h0, a, F);
  mod::Poly s0, t0;
  const mod::Poly one = mod::ext_gcd(g0, h0, s0, t0, F);
  if (mod::degree(one) != 0) throw NumericalError("local factors are not coprime");

  ZPoly g = from_modp(g0), h = from_modp(h0), s = from_modp(s0), t = from_modp(t0);
  mpz_class m = static_cast<unsigned long>(F.modulus());
  for (int i = 0; i < steps; ++i) {
    hensel_step(f, g, h, s, t, m);
    m *= m;
  }
  auto a = lift_all(g, left, F, steps, target);
  auto b = lift_all(h, right, F, steps, target);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void subset_sums(const std::vector<int>& degrees, int total, std::vector<bool>& reach) {
  reach.assign(static_cast<std::size_t>(total) + 1, false);
  reach[0] = true;
  for (int d : degrees) {
    for (int s = total; s >= d; --s) {
      if (reach[s - d]) reach[s] = true;
    }
  }
}

// Recombination of lifted factors into true factors over Z.
std::vector<IntPoly> recombine(IntPoly f, std::vector<ZPoly> lifted, const mpz_class& m,
                               const std::vector<bool>& admissible) {
  std::vector<IntPoly> found;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool progress = false;
    const std::size_t r = lifted.size();
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      int deg = 0;
      for (auto i : idx) deg += static_cast<int>(lifted[i].size()) - 1;
      if (deg < static_cast<int>(admissible.size()) && admissible[deg]) {
        ZPoly g{f.leading()};
        g = zreduce(g, m);
        for (auto i : idx) g = zmul(g, lifted[i], m);
        IntPoly cand = symmetric(g, m).primitive_part();
        IntPoly quot;
        if (cand.degree() > 0 && f.divides_by(cand, &quot)) {
          found.push_back(cand);
          f = quot;
          std::vector<ZPoly> rest;
          for (std::size_t i = 0; i < r; ++i) {
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(lifted[i]);
          }
          lifted = std::move(rest);
          progress = true;
          break;
        }
      }
      // Next combination in lexicographic order.
      std::size_t pos = s;
      while (pos > 0 && idx[pos - 1] == r - s + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!progress) ++s;
  }
  if (f.degree() > 0) found.push_back(f.primitive_part());
  return found;
}

std::vector<IntPoly> factor_squarefree_primitive(const IntPoly& f,
                                                 std::vector<ModularPattern>& patterns,
                                                 std::uint64_t& lifting_prime,
                                                 std::size_t pattern_primes) {
  if (f.degree() <= 1) return {f};
  const auto primes = good_primes(f, std::max<std::size_t>(pattern_primes, 1));
  std::size_t best = 0;
  std::size_t best_count = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const mod::PrimeField F(primes[i]);
    ModularPattern pat{primes[i], mod::degree_pattern(mod::monic(mod::reduce(f, F), F), F)};
    if (pat.degrees.size() < best_count) {
      best_count = pat.degrees.size();
      best = i;
    }
    patterns.push_back(std::move(pat));
  }
  const std::vector<bool> admissible = admissible_degrees(patterns, f.degree());
  if (best_count == 1) {
    lifting_prime = primes[best];
    return {f};
  }

  const mod::PrimeField F(primes[best]);
  lifting_prime = primes[best];
  const auto local = mod::factor_squarefree(mod::monic(mod::reduce(f, F), F), F, primes[best]);

  // Factor coefficients are bounded by 2^n ||f||_2; the lifted modulus must
  // exceed twice that times |lc(f)|.
  mpz_class bound = f.l2_norm_ceil() * abs(f.leading());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(f.degree() + 1));
  mpz_class m = static_cast<unsigned long>(primes[best]);
  int steps = 0;
  while (m <= bound) {
    m *= m;
    ++steps;
  }
  auto lifted = lift_all(from_int(f, m), local, F, steps, m);
  return recombine(f, std::move(lifted), m, admissible);
}

}  // namespace

IntPoly squarefree_part(const IntPoly& f) {
  const IntPoly g = gcd(f, f.derivative());
  IntPoly q;
  if (g.degree() <= 0) return f.primitive_part();
  if (!f.primitive_part().divides_by(g, &q)) throw NumericalError("gcd does not divide input");
  return q.primitive_part();
}

std::vector<std::uint64_t> good_primes(const IntPoly& f, std::size_t count, std::uint64_t start) {
  std::size_t tried = 0;
  auto accept = [&](std::uint64_t p) {
    if (++tried > count + 2000) {
      throw InconclusiveError("no usable primes found: every sampled prime divides the "
                              "discriminant or leading coefficient");
    }
    const mod::PrimeField F(p);
    if (F.from(f.leading()) == 0) return false;
    return mod::is_squarefree(mod::reduce(f, F), F);
  };
  return mod::primes_from(start, count, accept);
}

std::vector<bool> admissible_degrees(const std::vector<ModularPattern>& patterns, int total) {
  std::vector<bool> result(static_cast<std::size_t>(total) + 1, true);
  for (const auto& p : patterns) {
    std::vector<bool> reach;
    subset_sums(p.degrees, total, reach);
    for (int d = 0; d <= total; ++d) result[d] = result[d] && reach[d];
  }
  return result;
}

Factorization factor(const IntPoly& f, std::size_t pattern_primes) {
  if (f.is_zero()) throw ValidationError("cannot factor the zero polynomial");
  Factorization out;
  out.unit = f.content();
  if (f.leading() < 0) out.unit = -out.unit;
  const IntPoly g = f.primitive_part();
  if (g.degree() <= 0) return out;

  const IntPoly sqf = squarefree_part(g);
  auto parts = factor_squarefree_primitive(sqf, out.patterns, out.lifting_prime, pattern_primes);
  for (auto& p : parts) {
    IntFactor fac{p.primitive_part(), 0};
    IntPoly rest = g;
    IntPoly q;
    while (rest.divides_by(fac.factor, &q)) {
      ++fac.multiplicity;
      rest = q;
    }
    out.factors.push_back(std::move(fac));
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const IntFactor& a, const IntFactor& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    return a.factor.str() < b.factor.str();
  });
  return out;
}

}  // namespace qstc
