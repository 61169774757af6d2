#include "lyapna/classify.hpp"

#include <algorithm>

#include "lyapna/errors.hpp"

namespace lyapna {

namespace {

struct HypWord {
  Word word;
  P1NA att, rep;
};

// Fixed point set of one generator, by classification.  Identity
// contributes no constraint and returns an empty set.
std::vector<P1NA> generator_fixed_set(const MatNA& g, long budget) {
  switch (classify(g)) {
    case ClassNA::Identity:
      return {};
    case ClassNA::Hyperbolic: {
      auto [att, rep] = fixed_points(g, budget);
      return {att, rep};
    }
    case ClassNA::Parabolic: {
      if (g.c.is_zero_like()) return {P1NA::infinity()};
      return {P1NA(g.a - g.d, Series::constant(GRat(2)) * g.c)};
    }
    case ClassNA::StrictlyElliptic: {
      if (g.c.is_zero_like()) {
        // c = 0 and a != d (tr^2 != 4): fixed points are infinity and
        // b/(d-a).
        return {P1NA::infinity(), P1NA(g.b, g.d - g.a)};
      }
      Series disc = g.trace() * g.trace() - Series::constant(GRat(4));
      Series w;
      try {
        w = sqrt(disc, budget);
      } catch (const CoefficientNotASquare&) {
        throw EllipticUnresolved("elliptic fixed points need a root outside Q(i)((t^(1/2)))");
      }
      Series two_c = Series::constant(GRat(2)) * g.c;
      return {P1NA(g.a - g.d + w, two_c), P1NA(g.a - g.d - w, two_c)};
    }
  }
  return {};
}

struct SearchResult {
  std::optional<std::pair<Word, Word>> pair;
  bool any_hyperbolic = false;
  long depth = 0;
};

SearchResult search_hyperbolic_pair(const MeasureSpec& spec, long max_len, long budget) {
  SearchResult res;
  res.depth = max_len;
  const std::size_t m = spec.size();
  std::vector<HypWord> found;
  Word w;
  for (long len = 1; len <= max_len; ++len) {
    w.assign(static_cast<std::size_t>(len), 0);
    for (;;) {
      MatNA p = product_na(spec, w);
      if (classify(p) == ClassNA::Hyperbolic) {
        res.any_hyperbolic = true;
        auto [att, rep] = fixed_points(p, budget);
        for (const HypWord& prev : found) {
          bool distinct = prev.att != att && prev.att != rep && prev.rep != att && prev.rep != rep;
          if (distinct) {
            res.pair = {prev.word, w};
            return res;
          }
        }
        found.push_back({w, att, rep});
      }
      // lexicographic odometer
      std::size_t i = w.size();
      bool wrapped = true;
      while (i > 0) {
        --i;
        if (++w[i] < m) {
          wrapped = false;
          break;
        }
        w[i] = 0;
      }
      if (wrapped) break;
    }
  }
  return res;
}

}  // namespace

std::optional<std::pair<Word, Word>> find_hyperbolic_pair(const MeasureSpec& spec, long max_len,
                                                          long budget) {
  return search_hyperbolic_pair(spec, max_len, budget).pair;
}

bool verify_witness(const MeasureSpec& spec, const Word& w1, const Word& w2, long budget) {
  MatNA g1 = product_na(spec, w1);
  MatNA g2 = product_na(spec, w2);
  if (classify(g1) != ClassNA::Hyperbolic || classify(g2) != ClassNA::Hyperbolic) return false;
  auto [a1, r1] = fixed_points(g1, budget);
  auto [a2, r2] = fixed_points(g2, budget);
  return a1 != a2 && a1 != r2 && r1 != a2 && r1 != r2;
}

CommonFixedPoints common_fixed_points(const MeasureSpec& spec, long budget) {
  std::vector<std::vector<P1NA>> sets;
  std::vector<const MatNA*> mats;
  for (const auto& g : spec.gens) {
    auto fs = generator_fixed_set(g.mat, budget);
    if (fs.empty()) continue;  // identity
    sets.push_back(std::move(fs));
    mats.push_back(&g.mat);
  }
  CommonFixedPoints out{CommonFixedPoints::Kind::None, std::nullopt, std::nullopt, false};
  if (sets.empty()) {
    // all generators are the identity; everything is fixed
    out.kind = CommonFixedPoints::Kind::TwoCommon;
    out.z1 = P1NA::zero_point();
    out.z2 = P1NA::infinity();
    return out;
  }

  // Invariant pair first: candidates from any two-point fixed set.
  for (const auto& cand : sets) {
    if (cand.size() != 2) continue;
    const P1NA& p = cand[0];
    const P1NA& q = cand[1];
    bool invariant = true, any_swap = false;
    for (const MatNA* m : mats) {
      P1NA ip = mobius_apply(*m, p);
      P1NA iq = mobius_apply(*m, q);
      if (ip == p && iq == q) continue;
      if (ip == q && iq == p) {
        any_swap = true;
        continue;
      }
      invariant = false;
      break;
    }
    if (invariant) {
      out.kind = CommonFixedPoints::Kind::TwoCommon;
      out.z1 = p;
      out.z2 = q;
      out.has_swap = any_swap;
      return out;
    }
  }

  // Single common fixed point: candidates from the first constrained set.
  for (const P1NA& z : sets.front()) {
    bool common = true;
    for (const MatNA* m : mats)
      if (mobius_apply(*m, z) != z) {
        common = false;
        break;
      }
    if (common) {
      out.kind = CommonFixedPoints::Kind::OneCommon;
      out.z1 = z;
      return out;
    }
  }
  return out;
}

const char* to_string(GroupClass::Tag t) {
  switch (t) {
    case GroupClass::Tag::NonElementaryCertified: return "NonElementaryCertified";
    case GroupClass::Tag::Affine: return "Affine";
    case GroupClass::Tag::ZeroInfty: return "ZeroInfty";
    case GroupClass::Tag::GoodReductionSuspected: return "GoodReductionSuspected";
    default: return "Undetermined";
  }
}

MatNA conjugator_to_infinity(const P1NA& z, long budget) {
  const Series& p = z.x();
  const Series& q = z.y();
  if (p.has_terms() && p.ord() == Ord(Rat(0)))
    return MatNA{p.inv(budget), Series(), -q, p};
  return MatNA{Series(), q.inv(budget), -q, p};
}

MatNA conjugator_to_zero_infinity(const P1NA& z0, const P1NA& zinf, long budget) {
  Series w = z0.x() * zinf.y() - zinf.x() * z0.y();
  if (w.is_zero_like()) throw PrecisionExhausted("conjugator: points coincide up to precision");
  Series iw = w.inv(budget);
  return MatNA{-z0.y(), z0.x(), -(zinf.y() * iw), zinf.x() * iw};
}

GroupClass classify_group(const MeasureSpec& spec, long max_len, long budget) {
  SearchResult sr = search_hyperbolic_pair(spec, max_len, budget);
  GroupClass out{GroupClass::Tag::Undetermined, max_len, std::nullopt, std::nullopt};
  if (sr.pair) {
    out.tag = GroupClass::Tag::NonElementaryCertified;
    out.witness = sr.pair;
    return out;
  }
  if (!sr.any_hyperbolic) {
    out.tag = GroupClass::Tag::GoodReductionSuspected;
    return out;
  }
  CommonFixedPoints cf{CommonFixedPoints::Kind::None, std::nullopt, std::nullopt, false};
  try {
    cf = common_fixed_points(spec, budget);
  } catch (const EllipticUnresolved&) {
    return out;  // Undetermined
  }
  switch (cf.kind) {
    case CommonFixedPoints::Kind::TwoCommon:
      out.tag = GroupClass::Tag::ZeroInfty;
      out.conjugator = conjugator_to_zero_infinity(*cf.z1, *cf.z2, budget);
      return out;
    case CommonFixedPoints::Kind::OneCommon:
      out.tag = GroupClass::Tag::Affine;
      out.conjugator = conjugator_to_infinity(*cf.z1, budget);
      return out;
    default:
      return out;  // Undetermined
  }
}

Rat chi_na_affine(const MeasureSpec& spec, const MatNA& conjugator) {
  MatNA hinv = conjugator.inverse();
  Rat acc(0);
  for (const auto& g : spec.gens) {
    MatNA m = conjugator * g.mat * hinv;
    if (!m.c.is_zero_like())
      throw NotAffine("generator '" + g.name + "' is not upper triangular after conjugation");
    if (!m.a.has_terms())
      throw PrecisionExhausted("affine coefficient order unresolved for '" + g.name + "'");
    acc += g.weight * (-m.a.ord().q());
  }
  Rat out = abs(acc);
  out.canonicalize();
  return out;
}

Rat chi_na_zero_infty(const MeasureSpec& spec, const MatNA& conjugator) {
  MatNA hinv = conjugator.inverse();
  bool any_swap = false;
  for (const auto& g : spec.gens) {
    MatNA m = conjugator * g.mat * hinv;
    bool diag = m.b.is_zero_like() && m.c.is_zero_like();
    bool antidiag = m.a.is_zero_like() && m.d.is_zero_like();
    if (!diag && !antidiag)
      throw Error("InvalidArgument",
                  "generator '" + g.name + "' does not preserve {0, infinity} after conjugation");
    if (antidiag) any_swap = true;
  }
  if (!any_swap)
    throw NoSwapElement("all generators are diagonal; dispatch to the affine formula");
  return Rat(0);
}

}  // namespace lyapna
