#include "qstc/exact_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "qstc/decomposition.hpp"
#include "qstc/errors.hpp"
#include "qstc/modular.hpp"

namespace qstc {
namespace {

namespace mod = modular;

std::vector<std::uint64_t> char_poly_mod(const IntMatrix& a, const mod::PrimeField& F) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::uint64_t>> h(n, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h[i][j] = F.from(a[i][j]);
  }

  // Similarity reduction to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && h[piv][m - 1] == 0) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      std::swap(h[piv], h[m]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][piv], h[r][m]);
    }
    const std::uint64_t inv = F.inv(h[m][m - 1]);
    for (std::size_t i = m + 1; i < n; ++i) {
      const std::uint64_t u = F.mul(h[i][m - 1], inv);
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j) h[i][j] = F.sub(h[i][j], F.mul(u, h[m][j]));
      for (std::size_t r = 0; r < n; ++r) h[r][m] = F.add(h[r][m], F.mul(u, h[r][i]));
    }
  }

  // p_m = (x - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
  std::vector<std::vector<std::uint64_t>> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> cur(m + 1, 0);
    const auto& prev = p[m - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      cur[i + 1] = F.add(cur[i + 1], prev[i]);
      cur[i] = F.sub(cur[i], F.mul(h[m - 1][m - 1], prev[i]));
    }
    std::uint64_t t = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      t = F.mul(t, h[i][i - 1]);
      const std::uint64_t c = F.mul(h[i - 1][m - 1], t);
      if (c != 0) {
        for (std::size_t j = 0; j < p[i - 1].size(); ++j) {
          cur[j] = F.sub(cur[j], F.mul(c, p[i - 1][j]));
        }
      }
    }
    p[m] = std::move(cur);
  }
  return p[n];
}

}  // namespace

IntMatrix to_integer_matrix(const Eigen::MatrixXd& h) {
  IntMatrix m(h.rows(), std::vector<mpz_class>(h.cols()));
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      const double v = h(i, j);
      if (!std::isfinite(v) || v != std::nearbyint(v) || std::abs(v) > 9.0e15) {
        throw UnsupportedError("exact characteristic polynomial needs integer couplings");
      }
      m[i][j] = mpz_class(static_cast<long>(v));
    }
  }
  return m;
}

IntMatrix to_integer_matrix(const HamiltonianMatrix& h) { return to_integer_matrix(h.dense()); }

IntPoly char_poly_exact(const IntMatrix& a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw ValidationError("matrix must be square");
  }
  if (n == 0) return IntPoly{1};

  // |coefficient of x^(n-j)| <= C(n,j) rho^j <= (1 + rho)^n.
  mpz_class rho = 0;
  for (const auto& row : a) {
    mpz_class s = 0;
    for (const auto& v : row) s += abs(v);
    rho = std::max(rho, s);
  }
  mpz_class bound;
  const mpz_class base = rho + 1;
  mpz_pow_ui(bound.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n));
  bound = 2 * bound + 1;

  mpz_class modulus = 1;
  std::vector<mpz_class> acc(n + 1, 0);
  mpz_class p = mpz_class(1) << 61;
  while (modulus <= bound) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    const mod::PrimeField F(p.get_ui());
    const auto cp = char_poly_mod(a, F);
    // Garner update: acc <- acc + modulus * ((c - acc) / modulus mod p).
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t());
    for (std::size_t i = 0; i <= n; ++i) {
      mpz_class diff = mpz_class(static_cast<unsigned long>(cp[i])) - acc[i];
      diff = diff * inv;
      mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), p.get_mpz_t());
      acc[i] += modulus * diff;
    }
    modulus *= p;
  }
  const mpz_class half = modulus / 2;
  for (auto& c : acc) {
    if (c > half) c -= modulus;
  }
  return IntPoly(std::move(acc));
}

IntPoly char_poly_exact(const HamiltonianMatrix& h) { return char_poly_exact(to_integer_matrix(h)); }

IntPoly reduce_even(const IntPoly& p, int k) {
  if (k < -1) throw ValidationError("k must be >= -1");
  const auto shift = static_cast<std::size_t>(k + 1);
  for (std::size_t i = 0; i < shift; ++i) {
    if (p.coeff(i) != 0) {
      throw StructuralError("characteristic polynomial is not divisible by x^" +
                            std::to_string(shift) + " (null-space count differs from k+1)");
    }
  }
  std::vector<mpz_class> rest(p.coeffs().begin() + static_cast<long>(std::min(shift, p.size())),
                              p.coeffs().end());
  IntPoly q;
  try {
    q = IntPoly(std::move(rest)).substitute_power(2);
  } catch (const std::domain_error&) {
    throw StructuralError("quotient by x^" + std::to_string(shift) +
                          " is not even: spectrum is not symmetric");
  }
  return q.leading() < 0 ? q.negated() : q;
}

std::string to_string(Certification c) { return c == Certification::Proved ? "proved" : "evidence"; }

DegreeProfile factor_degree_profile(const IntPoly& q, std::size_t primes) {
  if (q.degree() < 1) throw ValidationError("profile needs a non-constant polynomial");
  const Factorization fz = factor(q, primes);
  DegreeProfile prof;
  prof.patterns = fz.patterns;
  for (const auto& f : fz.factors) {
    FactorDegree fd;
    fd.factor = f.factor;
    fd.degree = f.factor.degree();
    fd.multiplicity = f.multiplicity;
    if (f.multiplicity > 1) prof.squarefree = false;
    for (const auto& comp : complete_decomposition(RatPoly(f.factor))) {
      fd.component_degrees.push_back(comp.degree());
    }
    fd.radical_degree = radical_degree(f.factor);
    for (int i = 0; i < f.multiplicity; ++i) prof.degrees.push_back(fd.degree);
    prof.max_degree = std::max(prof.max_degree, fd.degree);
    prof.radical_degree = std::max(prof.radical_degree, fd.radical_degree);
    prof.factors.push_back(std::move(fd));
  }
  std::sort(prof.degrees.begin(), prof.degrees.end());

  // The factors are exact divisors found by Hensel lifting; irreducibility of
  // each follows from exhaustive recombination, so the profile is proved.
  // Agreement with every modular pattern is still checked as a safeguard.
  prof.certification = Certification::Proved;
  IntPoly check{1};
  for (const auto& f : fz.factors) {
    for (int i = 0; i < f.multiplicity; ++i) check = check * f.factor;
  }
  if (check != q.primitive_part()) prof.certification = Certification::Evidence;
  std::vector<int> sqf_degrees;
  for (const auto& f : fz.factors) sqf_degrees.push_back(f.factor.degree());
  int sqf_total = 0;
  for (int d : sqf_degrees) sqf_total += d;
  const auto admissible = admissible_degrees(fz.patterns, sqf_total);
  for (int d : sqf_degrees) {
    if (!admissible[d]) prof.certification = Certification::Evidence;
  }
  return prof;
}

std::string to_string(SequenceTag t) {
  switch (t) {
    case SequenceTag::S5:
      return "S5";
    case SequenceTag::S8:
      return "S8";
    case SequenceTag::S14:
      return "S14";
    case SequenceTag::S44:
      return "S44";
  }
  return {};
}

int seed_length(SequenceTag t) {
  switch (t) {
    case SequenceTag::S5:
      return 5;
    case SequenceTag::S8:
      return 8;
    case SequenceTag::S14:
      return 14;
    case SequenceTag::S44:
      return 44;
  }
  return 0;
}

std::optional<SequenceTag> classify_sequence(int k) {
  if (k < 0) return std::nullopt;
  const long n_plus_1 = 3L * k + 6;
  for (SequenceTag t : {SequenceTag::S5, SequenceTag::S8, SequenceTag::S14, SequenceTag::S44}) {
    const long base = seed_length(t) + 1;
    if (n_plus_1 % base != 0) continue;
    const long ratio = n_plus_1 / base;
    if ((ratio & (ratio - 1)) == 0) return t;
  }
  return std::nullopt;
}

CharPolyReport char_poly_report(const ChainSpec& spec, const CharPolyOptions& options) {
  spec.validate();
  const int k = spec.k();
  const int cap = options.allow_large ? 100 : options.max_k;
  if (k > cap) {
    throw ValidationError("k=" + std::to_string(k) + " exceeds the exact-arithmetic cap k<=" +
                          std::to_string(cap) + (options.allow_large ? "" : " (see allow-large)"));
  }
  CharPolyReport rep;
  rep.k = k;
  rep.n_qubits = spec.size();
  if (k > options.max_k) {
    rep.warning = "k=" + std::to_string(k) + " is beyond the default cap; runtime grows quickly";
  }
  rep.char_poly = char_poly_exact(build_hamiltonian(spec));
  rep.reduced_poly = reduce_even(rep.char_poly, k);
  rep.profile = factor_degree_profile(rep.reduced_poly);
  const bool homogeneous =
      std::all_of(spec.t.begin(), spec.t.end(), [](double v) { return v == 1.0; }) &&
      std::all_of(spec.w.begin(), spec.w.end(), [](double v) { return v == 1.0; }) &&
      std::all_of(spec.g.begin(), spec.g.end(), [](double v) { return v == 1.0; });
  if (homogeneous) rep.sequence = classify_sequence(k);
  return rep;
}

CharPolyReport char_poly_report(int k, const CharPolyOptions& options) {
  if (k < 0) throw ValidationError("k must be non-negative");
  return char_poly_report(ChainSpec::homogeneous(3 * static_cast<std::size_t>(k) + 5), options);
}

}  // namespace qstc
