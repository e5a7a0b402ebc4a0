#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracle_matrix_model.hpp"
#include "prophecke/extended_group.hpp"

using namespace prophecke;
using prophecke::testing::MatrixModel;
using prophecke::testing::MonoMat;

namespace {

std::shared_ptr<ExtendedGroup> make(const char* label, int q) {
  return std::make_shared<ExtendedGroup>(
      std::make_shared<AffineWeyl>(RootDatum::build(label, q)));
}

TildeElt random_elt(const ExtendedGroup& g, std::mt19937_64& rng, int box) {
  const RootDatum& d = g.datum();
  std::uniform_int_distribution<int> coord(-box, box);
  std::uniform_int_distribution<int> tor(0, std::max(0, g.modulus() - 1));
  std::uniform_int_distribution<int> fin(0, d.weyl().size() - 1);
  TildeElt x;
  for (int i = 0; i < d.rank(); ++i) {
    x.lam[i] = coord(rng);
    x.t[i] = g.modulus() > 0 ? tor(rng) : 0;
  }
  x.u = fin(rng);
  return x;
}

}  // namespace

TEST_CASE("matrix model certifies the cocycle (SL2, GL2, SL3, GL3)") {
  for (auto [label, nq] : std::vector<std::pair<const char*, int>>{
           {"SL2", 3}, {"SL2", 5}, {"SL2", 4}, {"GL2", 3}, {"GL2", 5},
           {"SL3", 3}, {"GL3", 3}}) {
    auto g = make(label, nq);
    GF field(g->datum().p(), [&] {
      int s = 1, q = g->datum().p();
      while (q < nq) {
        q *= g->datum().p();
        ++s;
      }
      return s;
    }());
    REQUIRE(field.q() == nq);
    MatrixModel model(label, field);
    std::mt19937_64 rng(12345);
    for (int it = 0; it < 400; ++it) {
      TildeElt a = random_elt(*g, rng, 2), b = random_elt(*g, rng, 2);
      CHECK(model.of(*g, g->mult(a, b)) == model.mul(model.of(*g, a), model.of(*g, b)));
      CHECK(model.of(*g, g->inverse(a)) ==
            model.mul(model.identity(), [&] {
              // invert in the model directly
              MonoMat m = model.of(*g, a);
              MonoMat r = model.identity();
              for (int j = 0; j < m.n; ++j) {
                r.row[m.row[j]] = j;
                r.val[m.row[j]] = -m.val[j];
                r.unit[m.row[j]] = field.inv(m.unit[j]);
              }
              return r;
            }()));
    }
  }
}

TEST_CASE("Tits lift squares and braid relations") {
  auto g = make("SL2", 3);
  const RootDatum& d = g->datum();
  TildeElt n = g->tits_lift(d.weyl().gen(0));
  TildeElt n2 = g->mult(n, n);
  CHECK(g->is_torus(n2));
  // alpha_v(-1) is the nonzero element of Z/2 here
  CHECK(n2.t == g->minus_one_coweight(d.simple_coroot(0)));
  CHECK_FALSE(is_zero(n2.t));

  // even q: the square is the identity
  auto g4 = make("SL2", 4);
  TildeElt m = g4->tits_lift(g4->datum().weyl().gen(0));
  CHECK(g4->mult(m, m) == ExtendedGroup::identity());

  // braid relation in SL3: n1 n2 n1 = n2 n1 n2 exactly
  auto g3 = make("SL3", 3);
  TildeElt n1 = g3->tits_lift(g3->datum().weyl().gen(0));
  TildeElt nn2 = g3->tits_lift(g3->datum().weyl().gen(1));
  CHECK(g3->mult(g3->mult(n1, nn2), n1) == g3->mult(g3->mult(nn2, n1), nn2));
  // and in B2 (order 4) and G2 (order 6)
  for (auto [label, reps] : std::vector<std::pair<const char*, int>>{{"B2", 4}, {"G2", 6}}) {
    auto gb = make(label, 3);
    TildeElt a = gb->tits_lift(gb->datum().weyl().gen(0));
    TildeElt b = gb->tits_lift(gb->datum().weyl().gen(1));
    TildeElt lhs = ExtendedGroup::identity(), rhs = ExtendedGroup::identity();
    for (int i = 0; i < reps; ++i) {
      lhs = gb->mult(lhs, i % 2 == 0 ? a : b);
      rhs = gb->mult(rhs, i % 2 == 0 ? b : a);
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("conjugation of the torus by lifts") {
  for (const char* label : {"SL2", "GL2", "B2"}) {
    auto g = make(label, 5);
    const RootDatum& d = g->datum();
    for (int i = 0; i < d.nsimple(); ++i) {
      TildeElt n = g->tits_lift(d.weyl().gen(i));
      for (const Coord& t : g->torus_points()) {
        TildeElt conj = g->conjugate(n, g->torus(t));
        CHECK(g->is_torus(conj));
        CHECK(conj.t == g->torus_apply(d.weyl().gen(i), t));
      }
    }
  }
}

TEST_CASE("splitting is a Weyl-equivariant homomorphism") {
  for (const char* label : {"SL2", "GL2", "SL3"}) {
    auto g = make(label, 3);
    const RootDatum& d = g->datum();
    CHECK(g->splitting(coord_zero()) == ExtendedGroup::identity());
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int it = 0; it < 100; ++it) {
      Coord a{}, b{};
      for (int i = 0; i < d.rank(); ++i) {
        a[i] = coord(rng);
        b[i] = coord(rng);
      }
      CHECK(g->mult(g->splitting(a), g->splitting(b)) == g->splitting(a + b));
      for (int i = 0; i < d.nsimple(); ++i) {
        int s = d.weyl().gen(i);
        CHECK(g->conjugate(g->tits_lift(s), g->splitting(a)) ==
              g->splitting(d.weyl().apply(s, a)));
      }
    }
  }
}

TEST_CASE("associativity on random triples") {
  std::mt19937_64 rng(20240811);
  for (const char* label : {"SL2", "GL2", "PGL2", "SL3", "B2", "G2"}) {
    auto g = make(label, 4);
    for (int it = 0; it < 2000; ++it) {
      TildeElt a = random_elt(*g, rng, 2), b = random_elt(*g, rng, 2),
               c = random_elt(*g, rng, 2);
      CHECK(g->mult(g->mult(a, b), c) == g->mult(a, g->mult(b, c)));
    }
    // inverses
    for (int it = 0; it < 200; ++it) {
      TildeElt a = random_elt(*g, rng, 2);
      CHECK(g->mult(a, g->inverse(a)) == ExtendedGroup::identity());
      CHECK(g->mult(g->inverse(a), a) == ExtendedGroup::identity());
    }
  }
}

TEST_CASE("cocycle normalization and word independence") {
  for (const char* label : {"SL3", "B2", "G2"}) {
    auto g = make(label, 5);
    const WeylGroup& w = g->datum().weyl();
    for (int u = 0; u < w.size(); ++u) {
      CHECK(is_zero(g->cocycle(u, w.identity())));
      CHECK(is_zero(g->cocycle(w.identity(), u)));
    }
    // recompute n(u) n(v) along alternative reduced words of v: descend by
    // any available descent instead of the stored word
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick(0, w.size() - 1);
    for (int it = 0; it < 50; ++it) {
      int u = pick(rng), v = pick(rng);
      // build an alternative reduced word for v by random left descents:
      // v = s_{alt[0]} s_{alt[1]} ... s_{alt[k-1]}
      std::vector<int> alt;
      int x = v;
      while (w.length(x) > 0) {
        std::vector<int> descents;
        for (int i = 0; i < w.ngens(); ++i)
          if (w.length(w.mult(w.gen(i), x)) < w.length(x)) descents.push_back(i);
        int i = descents[rng() % descents.size()];
        alt.push_back(i);
        x = w.mult(w.gen(i), x);
      }
      TildeElt prod = g->tits_lift(u);
      for (int letter : alt) prod = g->mult(prod, g->tits_lift(w.gen(letter)));
      TildeElt direct = g->mult(g->tits_lift(u), g->tits_lift(v));
      CHECK(prod == direct);
    }
  }
}

TEST_CASE("lift of affine simple reflections") {
  for (const char* label : {"SL2", "GL2", "SL3"}) {
    auto g = make(label, 3);
    const AffineWeyl& aw = g->aw();
    for (int i = 0; i < aw.naff(); ++i) {
      TildeElt n0 = g->lift_affine(i);
      CHECK(g->project(n0) == aw.simple_reflection(i));
      CHECK(g->length(n0) == 1);
      // n_A^2 lies in T_A
      TildeElt sq = g->mult(n0, n0);
      CHECK(g->is_torus(sq));
      const auto& ta = g->subtorus(i);
      CHECK(std::find(ta.begin(), ta.end(), sq.t) != ta.end());
      // n_A t n_A^{-1} = s_A(t)
      for (const Coord& t : g->torus_points()) {
        TildeElt conj = g->conjugate(n0, g->torus(t));
        CHECK(g->is_torus(conj));
        CHECK(conj.t == g->torus_apply(aw.simple_aff(i).reflection_u, t));
      }
    }
  }
}

TEST_CASE("group generated by lifts and torus has size (q-1)^rank * |W|") {
  for (auto [label, q] : std::vector<std::pair<const char*, int>>{
           {"SL2", 3}, {"SL2", 4}, {"SL2", 5}, {"GL2", 3}, {"GL2", 4}, {"GL2", 5}}) {
    auto g = make(label, q);
    const RootDatum& d = g->datum();
    std::vector<TildeElt> gens;
    for (int i = 0; i < d.nsimple(); ++i) gens.push_back(g->tits_lift(d.weyl().gen(i)));
    for (int i = 0; i < d.rank(); ++i) {
      Coord e{};
      e[i] = 1;
      gens.push_back(g->torus(e));
    }
    std::set<TildeElt> seen{ExtendedGroup::identity()};
    std::vector<TildeElt> frontier{ExtendedGroup::identity()};
    while (!frontier.empty()) {
      std::vector<TildeElt> next;
      for (const TildeElt& x : frontier)
        for (const TildeElt& gen : gens) {
          TildeElt y = g->mult(x, gen);
          if (seen.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    long long expect = g->torus_size() * d.weyl().size();
    CHECK(static_cast<long long>(seen.size()) == expect);
  }
}

TEST_CASE("torus characters") {
  auto g = make("SL2", 3);
  auto chars = g->characters();
  REQUIRE(chars.size() == 2);
  // T_A = alpha_v(F_3^x) has order 2: the trivial character is trivial on it,
  // the sign character is not
  int aff = g->aw().aff_name_index("s1");
  CHECK(g->subtorus(aff).size() == 2);
  CHECK(g->subtorus_scale(aff) == 1);
  CHECK(g->char_trivial_on_subtorus(chars[0], aff));
  CHECK_FALSE(g->char_trivial_on_subtorus(chars[1], aff));

  // GL2 q=5: xi = (a, b) is trivial on T_{e1-e2} iff a = b mod 4
  auto g2 = make("GL2", 5);
  int aff2 = g2->aw().aff_name_index("s1");
  for (const TorusChar& xi : g2->characters())
    CHECK(g2->char_trivial_on_subtorus(xi, aff2) ==
          ((xi.a[0] - xi.a[1]) % 4 == 0));
  CHECK(g2->characters().size() == 16);

  // multiplicativity of evaluated characters
  GF f5(5, 1);
  for (const TorusChar& xi : g2->characters())
    for (const Coord& s : g2->torus_points())
      for (const Coord& t : g2->torus_points())
        CHECK(g2->char_value(f5, xi, g2->torus_reduce(s + t)) ==
              f5.mul(g2->char_value(f5, xi, s), g2->char_value(f5, xi, t)));

  // PGL2: T_A is the subgroup of squares, of index 2 for odd q
  auto gp = make("PGL2", 5);
  int affp = gp->aw().aff_name_index("s1");
  CHECK(gp->subtorus(affp).size() == 2);
  CHECK(gp->subtorus_scale(affp) == 2);
}

TEST_CASE("factorization through omega and affine letters") {
  std::mt19937_64 rng(99);
  for (const char* label : {"SL2", "GL2", "PGL2", "SL3"}) {
    auto g = make(label, 4);
    for (int it = 0; it < 200; ++it) {
      TildeElt w = random_elt(*g, rng, 2);
      auto f = g->factor(w);
      TildeElt acc = g->mult(g->torus(f.t), f.omega);
      int len = 0;
      for (int i : f.letters) {
        acc = g->mult(acc, g->lift_affine(i));
        CHECK(g->length(acc) == ++len);
      }
      CHECK(acc == w);
    }
  }
}
