#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "strands/wreath.hpp"

using namespace strands;

static Presentation ring(Family f, int n) { return make_presentation(f, n, Geometry::Ring); }

static std::vector<Presentation> all_rings3() {
  return {ring(Family::S, 3), ring(Family::T, 3), ring(Family::F, 3), ring(Family::W, 3)};
}

TEST_CASE("pair multiplication permutes the right factor's winding", "[ring]") {
  for (const Presentation& p : all_rings3()) {
    WreathElement a = wreath_from_text("t1 t3^-1 s1", p);
    CHECK(a.winding == std::vector<long long>{1, 0, -1});
    WreathElement b = wreath_from_text("t2 s2", p);
    CHECK(b.winding == std::vector<long long>{0, 1, 0});

    WreathElement ab = wreath_multiply(a, b);
    // s1 carries index 2 to index 1, so b's t2 coordinate lands on t1.
    CHECK(ab.winding == std::vector<long long>{2, 0, -1});
    CHECK(word_to_text(ab.strand.word) == "s1 s2");
    // Same answer when the concatenated word is folded in one pass.
    CHECK(wreath_equal(ab, wreath_from_text("t1 t3^-1 s1 t2 s2", p)));
  }
}

TEST_CASE("conjugation relabels translations along the strand permutation", "[ring]") {
  for (const Presentation& p : all_rings3()) {
    CHECK(wreath_equal(wreath_from_text("s1 t1 s1", p), wreath_from_text("t2", p)));
    CHECK(wreath_equal(wreath_from_text("s1 t2 s1", p), wreath_from_text("t1", p)));
    CHECK(wreath_equal(wreath_from_text("s1 t3 s1", p), wreath_from_text("t3", p)));
    CHECK(wreath_equal(wreath_from_text("t1 s1", p), wreath_from_text("s1 t2", p)));
    CHECK_FALSE(wreath_equal(wreath_from_text("t1 s1", p), wreath_from_text("s1 t1", p)));
  }
}

TEST_CASE("inverses and identities in the pair model", "[ring]") {
  std::mt19937_64 rng(77002u);
  for (const Presentation& p : all_rings3()) {
    WreathElement id = wreath_identity(p);
    for (int round = 0; round < 25; ++round) {
      Word w = oracles::random_ring_word(p, 1 + round % 12, rng);
      WreathElement e = wreath_from_word(w);
      CHECK(wreath_equal(wreath_multiply(e, wreath_inverse(e)), id));
      CHECK(wreath_equal(wreath_multiply(wreath_inverse(e), e), id));
      CHECK(wreath_equal(wreath_from_word(word_inverse(w)), wreath_inverse(e)));
    }
  }
}

TEST_CASE("folding is multiplicative and winding is additive over purity", "[ring]") {
  std::mt19937_64 rng(77003u);
  for (const Presentation& p : {ring(Family::S, 3), ring(Family::T, 4)}) {
    for (int round = 0; round < 20; ++round) {
      Word u = oracles::random_ring_word(p, 1 + round % 9, rng);
      Word v = oracles::random_ring_word(p, 1 + (round * 5) % 9, rng);
      WreathElement eu = wreath_from_word(u), ev = wreath_from_word(v);
      WreathElement both = wreath_from_word(word_concat(u, v));
      CHECK(wreath_equal(both, wreath_multiply(eu, ev)));
      CHECK(total_winding(both) == total_winding(eu) + total_winding(ev));
      // The strand permutation of the fold matches the word's own image.
      CHECK(permutation_image(eu.strand.word) == permutation_image(u));
    }
  }
}

TEST_CASE("distinguished elements have the advertised pair forms", "[ring]") {
  for (const Presentation& p : all_rings3()) {
    WreathElement s0 = cut_exchange(p);
    CHECK(s0.winding == std::vector<long long>{1, 0, -1});
    CHECK(wreath_equal(s0, wreath_from_text("t1 t3^-1 s1 s2 s1", p)));
    CHECK_FALSE(is_pure(s0));
    CHECK(in_affine_subgroup(s0));
    // An exchange through the cut squares to nothing, like any other exchange.
    CHECK(wreath_equal(wreath_multiply(s0, s0), wreath_identity(p)));

    WreathElement z = drift(p);
    CHECK(z.winding == std::vector<long long>{1, 0, 0});
    CHECK(word_to_text(z.strand.word) == "s1 s2");
    CHECK_FALSE(in_affine_subgroup(z));
    CHECK(total_winding(z) == 1);

    WreathElement zi = wreath_inverse(z);
    CHECK(zi.winding == std::vector<long long>{0, 0, -1});
    CHECK(wreath_equal(zi, wreath_from_text("z^-1", p)));
  }
}

TEST_CASE("a full wind around the ring folds to a single translation", "[ring]") {
  // Walking one particle all the way around: its exchanges with everyone it
  // passes plus one cut crossing cancel freely, leaving t_i exactly.  This
  // holds in every family because only free cancellation is involved.
  for (const Presentation& p : all_rings3()) {
    CHECK(wreath_equal(wreath_from_text("z s2 s1", p), wreath_from_text("t1", p)));
    CHECK(wreath_equal(wreath_from_text("s1 z s2", p), wreath_from_text("t2", p)));
    CHECK(wreath_equal(wreath_from_text("s2 s1 z", p), wreath_from_text("t3", p)));
    // Upward winds are the inverses.
    CHECK(wreath_equal(wreath_from_text("z^-1 s1 s2", p), wreath_from_text("t3^-1", p)));
    CHECK(wreath_equal(wreath_from_text("s2 z^-1 s1", p), wreath_from_text("t2^-1", p)));
    CHECK(wreath_equal(wreath_from_text("s1 s2 z^-1", p), wreath_from_text("t1^-1", p)));
  }
}

TEST_CASE("drift conjugation shifts indices only where the braid move holds", "[ring]") {
  auto shifts = [](const Presentation& p, int i) {
    WreathElement z = drift(p);
    WreathElement lhs = wreath_multiply(
        wreath_multiply(z, wreath_from_word(Word{p, {sigma(i)}})), wreath_inverse(z));
    return wreath_equal(lhs, wreath_from_word(Word{p, {sigma(i + 1)}}));
  };
  CHECK(shifts(ring(Family::S, 3), 1));
  CHECK(shifts(ring(Family::S, 4), 1));
  CHECK(shifts(ring(Family::S, 4), 2));
  CHECK(shifts(ring(Family::F, 3), 1));  // F3 coincides with S3
  CHECK_FALSE(shifts(ring(Family::T, 3), 1));
  CHECK_FALSE(shifts(ring(Family::T, 4), 1));
  CHECK_FALSE(shifts(ring(Family::F, 4), 1));
  CHECK_FALSE(shifts(ring(Family::F, 4), 2));
  CHECK_FALSE(shifts(ring(Family::W, 3), 1));
}

TEST_CASE("drift power equals the full translation only in family S", "[ring]") {
  auto z_cubed = [](const Presentation& p) {
    WreathElement z = drift(p);
    return wreath_multiply(wreath_multiply(z, z), z);
  };
  for (const Presentation& p : all_rings3()) {
    WreathElement zzz = z_cubed(p);
    CHECK(zzz.winding == std::vector<long long>{1, 1, 1});
    bool matches = wreath_equal(zzz, wreath_from_text("t1 t2 t3", p));
    bool collapses = p.family == Family::S || p.family == Family::F;  // F3 = S3
    CHECK(matches == collapses);
  }
}

TEST_CASE("affine relation report for the symmetric ring", "[ring]") {
  for (int n : {3, 4, 5}) {
    AffineReport r = verify_affine_presentation(n);
    CHECK(r.all_hold);
    std::size_t expected = n + n * (n - 1) / 2 + n + 2;
    CHECK(r.checks.size() == expected);
    for (const auto& c : r.checks) CHECK(c.holds);
  }
  CHECK_THROWS_AS(verify_affine_presentation(2), DomainError);
}

TEST_CASE("purity and the affine subgroup", "[ring]") {
  Presentation p = ring(Family::S, 3);
  WreathElement settle = wreath_from_text("t1 s1 t2^-1 s1", p);
  CHECK(is_pure(settle));
  CHECK(wreath_equal(settle, wreath_identity(p)));

  CHECK(in_affine_subgroup(parse_word("t1 t2^-1", p)));
  CHECK_FALSE(in_affine_subgroup(parse_word("t1 t2", p)));
  CHECK_FALSE(in_affine_subgroup(parse_word("z", p)));
  CHECK(in_affine_subgroup(parse_word("z s2 s1 t1^-1", p)));
  CHECK(is_pure(wreath_from_text("s1 s1", p)));
  CHECK_FALSE(is_pure(wreath_from_text("s1 t1", p)));
}

TEST_CASE("ring ball counts and membership", "[ring][ball]") {
  Presentation p = ring(Family::S, 2);
  CHECK(wreath_ball(p, 0).size() == 1);
  CHECK(wreath_ball(p, 1).size() == 6);
  auto b2 = wreath_ball(p, 2);
  CHECK(b2.size() == 18);

  WreathElement z = drift(p);
  auto contains = [&](const std::vector<WreathBallEntry>& ball, const WreathElement& e) {
    for (const auto& entry : ball)
      if (wreath_equal(entry.element, e)) return true;
    return false;
  };
  CHECK(contains(b2, z));                  // z = t1 s1 has length 2 over s,t
  CHECK_FALSE(contains(wreath_ball(p, 1), z));
  for (const auto& entry : b2)
    CHECK(static_cast<long long>(entry.length) >=
          std::abs(total_winding(entry.element)));
}

TEST_CASE("geometry guards", "[ring]") {
  Presentation interval = make_presentation(Family::S, 3, Geometry::Interval);
  CHECK_THROWS_AS(wreath_from_word(Word{interval, {sigma(1)}}), DomainError);
  CHECK_THROWS_AS(cut_exchange(interval), DomainError);
  CHECK_THROWS_AS(wreath_ball(interval, 1), DomainError);
}
