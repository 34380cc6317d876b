#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "refl4/construction.hpp"
#include "refl4/inversive.hpp"

namespace refl4 {

using Word = std::vector<std::uint16_t>;

std::string word_to_string(const Word& w);

struct GroupPresentation {
  std::size_t generator_count = 0;
  CoxeterMatrix coxeter_matrix;
};

// m_ij from the audit's exact angles, ∞ for disjoint pairs. Throws Error
// listing the offending pairs when the audit has violations.
GroupPresentation presentation_from_audit(const AuditReport& report);

struct RelationFailure {
  std::size_t i = 0, j = 0;
  int expected_order = 0;
  // Smallest positive power that is the identity, if any up to expected_order.
  std::optional<int> first_identity_power;
  std::string message;
};

struct RelationCheck {
  bool ok = true;
  std::size_t relations_checked = 0;
  std::vector<RelationFailure> failures;
};

// Checks R_i² = I and, for finite m_ij, that R_iR_j has order exactly m_ij.
RelationCheck verify_relations(const BallConfiguration& conf, const GroupPresentation& pres, unsigned workers = 1);

// Generator data for fast right multiplication M·R = M − (Mσ)(kJσ)ᵀ.
class ReflectionGenerators {
 public:
  explicit ReflectionGenerators(const BallConfiguration& conf);

  std::size_t size() const { return matrices_.size(); }
  const MoebiusMatrix& matrix(std::size_t g) const { return matrices_[g]; }
  MoebiusMatrix right_multiply(const MoebiusMatrix& m, std::size_t g) const;
  MoebiusMatrix product(const Word& w) const;

 private:
  std::vector<MoebiusMatrix> matrices_;
  std::vector<InversiveVector> sigma_;
  std::vector<InversiveVector> row_;  // (2/r²)·Jσ
};

struct GroupElement {
  Word shortlex_word;
  std::string key;  // canonical serialization of the exact matrix

  MoebiusMatrix matrix() const { return MoebiusMatrix::from_key(key); }
  std::size_t length() const { return shortlex_word.size(); }
};

struct EnumerationOptions {
  std::size_t element_cap = 1'000'000;
  unsigned workers = 1;
};

struct Enumeration {
  std::vector<GroupElement> elements;  // ordered by length, then shortlex
  std::vector<std::size_t> growth;     // elements per length
  bool truncated = false;
};

// Breadth-first enumeration of all elements of word length ≤ max_length.
Enumeration enumerate(const BallConfiguration& conf, std::size_t max_length, const EnumerationOptions& options = {});

struct LorentzCheck {
  bool ok = true;
  std::size_t checked = 0;
  std::optional<Word> failure;
};

// MᵀJM = J on every element up to full_length and a seeded sample of the rest.
LorentzCheck check_lorentz(const Enumeration& e, std::uint64_t seed, double sample_fraction = 0.05,
                           std::size_t full_length = 3);

struct AbstractGrowth {
  std::vector<std::size_t> growth;
  std::vector<Word> normal_forms;  // shortlex normal forms, by length then lex
  bool truncated = false;
};

// Lexicographically least word among those reachable by braid moves.
std::vector<Word> braid_class(const Word& reduced, const CoxeterMatrix& m);

// Enumerates the abstract Coxeter group by shortlex normal forms using only
// braid moves and cancellation; no geometry is consulted.
AbstractGrowth abstract_growth(const GroupPresentation& pres, std::size_t max_length,
                               std::size_t element_cap = 1'000'000);

struct OrbitPoint {
  GroupElement element;
  ExtendedPoint image;
};

struct OrbitTiling {
  ExtendedPoint probe = ExtendedPoint::infinity();
  std::vector<OrbitPoint> points;
  bool injective = true;
  bool leaves_domain = true;  // every non-identity image lies in an open ball
  bool truncated = false;
  std::vector<std::string> problems;
};

// Orbit of a probe in the interior of the fundamental domain; throws Error
// when the probe lies in some closed ball.
OrbitTiling orbit_tiling(const BallConfiguration& conf, std::size_t max_length, const ExtendedPoint& probe,
                         const EnumerationOptions& options = {});

// 6×6 matrix over the field with `prime` elements.
struct ModMatrix {
  std::uint64_t prime = 0;
  std::array<std::uint64_t, 36> entries{};

  static ModMatrix identity(std::uint64_t prime);
  static ModMatrix reduce(const MoebiusMatrix& m, std::uint64_t prime);  // throws if p divides a denominator
  ModMatrix operator*(const ModMatrix& rhs) const;
  bool operator==(const ModMatrix&) const = default;
  bool is_identity() const;
  std::uint64_t determinant() const;
};

std::uint64_t reduce_mod(const Rational& q, std::uint64_t prime);
bool is_prime(std::uint64_t n);

struct FiniteQuotient {
  std::uint64_t prime = 0;
  std::vector<ModMatrix> images;
  std::vector<int> determinant_signs;  // rational determinant of each generator
  bool homomorphism_ok = true;
  std::size_t relations_checked = 0;
  std::vector<std::string> relation_failures;
  std::size_t order_bound = 0;  // |⟨images⟩|, or the cap when order_capped
  bool order_capped = false;
};

FiniteQuotient congruence_quotient(const BallConfiguration& conf, const GroupPresentation& pres, std::uint64_t prime,
                                   std::size_t order_cap = 200'000);

// Image of a word: product of generator images together with det sign.
struct QuotientImage {
  ModMatrix matrix;
  int determinant_sign = 1;
  bool is_trivial() const { return determinant_sign == 1 && matrix.is_identity(); }
};
QuotientImage quotient_image(const FiniteQuotient& q, const Word& w);

struct TorsionWitness {
  Word word;
  int order = 0;
  int image_order = 0;
};

struct TorsionCheck {
  bool ok = true;
  std::size_t elements = 0;
  std::size_t finite_order_elements = 0;
  std::vector<std::pair<int, std::size_t>> order_histogram;  // (order, count)
  std::vector<TorsionWitness> witnesses;
  bool truncated = false;
};

// Exact order of m if some power ≤ bound is the identity.
std::optional<int> finite_order(const MoebiusMatrix& m, int bound = 60);

// Every finite-order element up to max_length must map to an element of the
// same order in the quotient.
TorsionCheck torsion_survival_check(const BallConfiguration& conf, const FiniteQuotient& quotient,
                                    std::size_t max_length, const EnumerationOptions& options = {},
                                    int order_bound = 60);

}  // namespace refl4
