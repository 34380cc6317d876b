#include <algorithm>
#include <map>
#include <unordered_set>

#include "refl4/coxeter.hpp"
#include "refl4/parallel.hpp"

namespace refl4 {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Prime used to screen candidate orders before confirming them exactly.
constexpr std::uint64_t kScreenPrime = (std::uint64_t{1} << 61) - 1;

struct ModMatrixHash {
  std::size_t operator()(const ModMatrix& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : m.entries) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

int image_order(const QuotientImage& img, int limit) {
  QuotientImage p = img;
  for (int k = 1; k <= limit; ++k) {
    if (p.is_trivial()) return k;
    p.matrix = p.matrix * img.matrix;
    p.determinant_sign *= img.determinant_sign;
  }
  return 0;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % d == 0) return n == d;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r && composite; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t reduce_mod(const Rational& q, std::uint64_t prime) {
  const unsigned long p = static_cast<unsigned long>(prime);
  const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) throw Error(to_string(q) + " has a denominator divisible by " + std::to_string(prime));
  const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  return mul_mod(num, pow_mod(den, prime - 2, prime), prime);
}

ModMatrix ModMatrix::identity(std::uint64_t prime) {
  ModMatrix m;
  m.prime = prime;
  for (std::size_t i = 0; i < 6; ++i) m.entries[i * 6 + i] = 1 % prime;
  return m;
}

ModMatrix ModMatrix::reduce(const MoebiusMatrix& m, std::uint64_t prime) {
  ModMatrix out;
  out.prime = prime;
  for (std::size_t k = 0; k < 36; ++k) out.entries[k] = reduce_mod(m.entries()[k], prime);
  return out;
}

ModMatrix ModMatrix::operator*(const ModMatrix& rhs) const {
  ModMatrix out;
  out.prime = prime;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      u128 s = 0;
      for (std::size_t k = 0; k < 6; ++k) s += static_cast<u128>(entries[i * 6 + k]) * rhs.entries[k * 6 + j];
      out.entries[i * 6 + j] = static_cast<std::uint64_t>(s % prime);
    }
  }
  return out;
}

bool ModMatrix::is_identity() const { return *this == identity(prime); }

std::uint64_t ModMatrix::determinant() const {
  std::array<std::uint64_t, 36> a = entries;
  std::uint64_t det = 1;
  for (std::size_t col = 0; col < 6; ++col) {
    std::size_t pivot = col;
    while (pivot < 6 && a[pivot * 6 + col] == 0) ++pivot;
    if (pivot == 6) return 0;
    if (pivot != col) {
      for (std::size_t k = 0; k < 6; ++k) std::swap(a[pivot * 6 + k], a[col * 6 + k]);
      det = (prime - det) % prime;
    }
    det = mul_mod(det, a[col * 6 + col], prime);
    const std::uint64_t inv = pow_mod(a[col * 6 + col], prime - 2, prime);
    for (std::size_t row = col + 1; row < 6; ++row) {
      const std::uint64_t f = mul_mod(a[row * 6 + col], inv, prime);
      if (f == 0) continue;
      for (std::size_t k = col; k < 6; ++k)
        a[row * 6 + k] = (a[row * 6 + k] + prime - mul_mod(f, a[col * 6 + k], prime)) % prime;
    }
  }
  return det;
}

FiniteQuotient congruence_quotient(const BallConfiguration& conf, const GroupPresentation& pres, std::uint64_t prime,
                                   std::size_t order_cap) {
  if (prime == 2 || prime == 3) throw Error("prime must not be 2 or 3");
  if (!is_prime(prime)) throw Error(std::to_string(prime) + " is not prime");
  if (prime >= (std::uint64_t{1} << 62)) throw Error("prime too large");
  if (pres.generator_count != conf.size()) throw Error("presentation and configuration sizes differ");

  FiniteQuotient q;
  q.prime = prime;
  const ReflectionGenerators gens(conf);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    q.images.push_back(ModMatrix::reduce(gens.matrix(g), prime));
    q.determinant_signs.push_back(sgn(gens.matrix(g).determinant()));
  }

  const ModMatrix id = ModMatrix::identity(prime);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    ++q.relations_checked;
    if (!(q.images[i] * q.images[i]).is_identity()) {
      q.homomorphism_ok = false;
      q.relation_failures.push_back("R" + std::to_string(i) + "^2");
    }
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const int m = pres.coxeter_matrix.at(i, j);
      if (m == CoxeterMatrix::kInfinity) continue;
      ++q.relations_checked;
      const ModMatrix base = q.images[i] * q.images[j];
      ModMatrix p = id;
      for (int e = 0; e < m; ++e) p = p * base;
      if (!p.is_identity()) {
        q.homomorphism_ok = false;
        q.relation_failures.push_back("(R" + std::to_string(i) + " R" + std::to_string(j) + ")^" + std::to_string(m));
      }
    }
  }

  // For p odd the determinant sign is determined by the mod-p matrix, so the
  // pair (image, sign) generates a group of the same order as the images.
  std::unordered_set<ModMatrix, ModMatrixHash> group{id};
  std::vector<ModMatrix> queue{id};
  for (std::size_t head = 0; head < queue.size() && !q.order_capped; ++head) {
    for (const auto& g : q.images) {
      ModMatrix next = queue[head] * g;
      if (group.insert(next).second) {
        queue.push_back(std::move(next));
        if (group.size() >= order_cap) {
          q.order_capped = true;
          break;
        }
      }
    }
  }
  q.order_bound = group.size();
  return q;
}

QuotientImage quotient_image(const FiniteQuotient& q, const Word& w) {
  QuotientImage img{ModMatrix::identity(q.prime), 1};
  for (auto g : w) {
    img.matrix = img.matrix * q.images.at(g);
    img.determinant_sign *= q.determinant_signs.at(g);
  }
  return img;
}

std::optional<int> finite_order(const MoebiusMatrix& m, int bound) {
  const ModMatrix screened = ModMatrix::reduce(m, kScreenPrime);
  ModMatrix p = screened;
  for (int k = 1; k <= bound; ++k) {
    if (p.is_identity() && m.power(static_cast<unsigned>(k)).is_identity()) return k;
    p = p * screened;
  }
  return std::nullopt;
}

TorsionCheck torsion_survival_check(const BallConfiguration& conf, const FiniteQuotient& quotient,
                                    std::size_t max_length, const EnumerationOptions& options, int order_bound) {
  const Enumeration e = enumerate(conf, max_length, options);
  TorsionCheck check;
  check.truncated = e.truncated;
  check.elements = e.elements.size();
  std::vector<std::optional<TorsionWitness>> found(e.elements.size());
  std::vector<int> orders(e.elements.size(), 0);
  parallel_for(e.elements.size(), options.workers, [&](std::size_t k) {
    const auto order = finite_order(e.elements[k].matrix(), order_bound);
    if (!order) return;
    orders[k] = *order;
    const int img = image_order(quotient_image(quotient, e.elements[k].shortlex_word), *order);
    if (img != *order) found[k] = TorsionWitness{e.elements[k].shortlex_word, *order, img};
  });
  std::map<int, std::size_t> histogram;
  for (std::size_t k = 0; k < e.elements.size(); ++k) {
    if (orders[k] == 0) continue;
    ++check.finite_order_elements;
    ++histogram[orders[k]];
    if (found[k]) {
      check.ok = false;
      check.witnesses.push_back(std::move(*found[k]));
    }
  }
  check.order_histogram.assign(histogram.begin(), histogram.end());
  return check;
}

}  // namespace refl4
