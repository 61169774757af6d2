#pragma once

#include <optional>
#include <vector>

#include "lyapna/walks.hpp"

namespace lyapna {

// Search words in length-then-lexicographic order; the first pair of
// hyperbolic words with four pairwise distinct fixed points certifies that
// the group is non-elementary.  nullopt when the search space is exhausted.
std::optional<std::pair<Word, Word>> find_hyperbolic_pair(const MeasureSpec& spec, long max_len,
                                                          long budget = Series::kDefaultBudget);

// Re-verify a returned witness pair from scratch.
bool verify_witness(const MeasureSpec& spec, const Word& w1, const Word& w2,
                    long budget = Series::kDefaultBudget);

struct CommonFixedPoints {
  enum class Kind { TwoCommon, OneCommon, None } kind;
  std::optional<P1NA> z1, z2;  // TwoCommon: both; OneCommon: z1
  bool has_swap = false;       // TwoCommon: some generator permutes the pair
};

// Intersect the generator fixed-point sets: an invariant pair (possibly
// swapped), a single common fixed point, or nothing.  EllipticUnresolved
// when an elliptic generator's fixed points cannot be computed exactly.
CommonFixedPoints common_fixed_points(const MeasureSpec& spec,
                                      long budget = Series::kDefaultBudget);

struct GroupClass {
  enum class Tag {
    NonElementaryCertified,
    Affine,
    ZeroInfty,
    GoodReductionSuspected,
    Undetermined,
  } tag;
  long search_depth = 0;
  std::optional<std::pair<Word, Word>> witness;  // NonElementaryCertified
  std::optional<MatNA> conjugator;               // Affine / ZeroInfty
};
const char* to_string(GroupClass::Tag t);

// Full dispatch: certify non-elementarity by bounded search, otherwise
// classify the elementary type.  Absence of a witness up to max_len is never
// a negative certificate.
GroupClass classify_group(const MeasureSpec& spec, long max_len = 6,
                          long budget = Series::kDefaultBudget);

// Conjugator sending a point (OneCommon) to infinity, or an ordered pair to
// (0, infinity).
MatNA conjugator_to_infinity(const P1NA& z, long budget = Series::kDefaultBudget);
MatNA conjugator_to_zero_infinity(const P1NA& z0, const P1NA& zinf,
                                  long budget = Series::kDefaultBudget);

// chi for a spec conjugate to the affine group: |sum_i p_i * (-ord alpha_i)|
// with alpha_i the upper-left entry after conjugation.  NotAffine when some
// conjugated generator is not upper triangular.
Rat chi_na_affine(const MeasureSpec& spec, const MatNA& conjugator);

// chi = 0 for a spec preserving {0, infinity} with at least one swap;
// NoSwapElement when all generators are diagonal after conjugation (then the
// spec is in the affine case).
Rat chi_na_zero_infty(const MeasureSpec& spec, const MatNA& conjugator);

}  // namespace lyapna
