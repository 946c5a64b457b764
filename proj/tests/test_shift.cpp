#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace leavitt;
using support::fixture;

namespace {
  LaurentPoly poly(std::size_t step, std::vector<std::pair<long, long>> const& terms) {
    LaurentPoly p(step);
    for (auto [e, c] : terms) {
      p.add_term(e, c);
    }
    return p;
  }

  std::vector<long> residues(Descriptor const& d) {
    std::vector<long> out;
    for (auto g : d.shifts) {
      out.push_back(mod_step(g, d.step));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
}  // namespace

TEST_CASE("Laurent arithmetic", "[shift][laurent]") {
  CHECK(laurent_mul(poly(2, {{2, 1}}), poly(2, {{-2, 1}})) == LaurentPoly::one(2));
  CHECK(laurent_mul(poly(2, {{0, 1}, {2, 1}}), poly(2, {{2, 1}})) == poly(2, {{2, 1}, {4, 1}}));
  CHECK(laurent_mul(poly(2, {{0, 1}, {2, 1}}), LaurentPoly(2)).is_zero());
  CHECK_THROWS_AS(laurent_mul(LaurentPoly::one(2), LaurentPoly::one(3)), Error);
  CHECK_THROWS_AS(poly(2, {{1, 1}}), Error);
  CHECK_THROWS_AS(poly(0, {{2, 1}}), Error);
  CHECK((poly(2, {{2, 1}}) + poly(2, {{2, -1}})).is_zero());
}

TEST_CASE("is_unit", "[shift][laurent]") {
  auto a = LaurentPoly::monomial(2, 3, 2);
  CHECK(is_unit(a));
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK(*inv == LaurentPoly::monomial(2, Rational(1, 3), -2));
  CHECK(laurent_mul(a, *inv) == LaurentPoly::one(2));
  CHECK_FALSE(is_unit(poly(2, {{0, 1}, {2, 1}})));
  CHECK_FALSE(is_unit(LaurentPoly(2)));
  CHECK(is_unit(LaurentPoly::monomial(0, 5, 0)));
  CHECK_FALSE(inverse(LaurentPoly(0)));
}

TEST_CASE("is_unit agrees with explicit inversion on small supports", "[shift][oracle]") {
  // support <= 3 in [-6, 6], coefficients in {-2, -1, 1, 2}
  std::vector<long> exps{-6, -4, -2, 0, 2, 4, 6};
  for (std::size_t mask = 0; mask < (1U << exps.size()); ++mask) {
    if (std::popcount(mask) > 3) {
      continue;
    }
    for (int coeffs = 0; coeffs < 64; ++coeffs) {
      LaurentPoly p(2);
      int         k = 0;
      for (std::size_t i = 0; i < exps.size(); ++i) {
        if (mask >> i & 1U) {
          static constexpr long cs[] = {-2, -1, 1, 2};
          p.add_term(exps[i], cs[(coeffs >> (2 * k++)) & 3]);
        }
      }
      CHECK(is_unit(p) == support::solvable_inverse(p, 12));
    }
  }
}

TEST_CASE("entry_degree", "[shift]") {
  Descriptor d{2, {0, 1, 1, 2}};
  CHECK(entry_degree(d, 1, 0, 2) == 3);
  CHECK(entry_degree(d, 0, 0, 0) == 0);
  CHECK(entry_degree(d, 0, 3, 2) == 0);
  CHECK_THROWS_AS(entry_degree(d, 4, 0, 0), Error);
  CHECK_THROWS_AS(entry_degree(d, 0, 0, 1), Error);
}

TEST_CASE("lpa_descriptor", "[shift]") {
  auto f1 = fixture("F1");
  CHECK(lpa_descriptor(f1, f1.vertex("v3")) == Descriptor{2, {0, 1, 1, 2}});
  auto f2 = fixture("F2");
  CHECK(lpa_descriptor(f2, f2.vertex("w2")) == Descriptor{2, {0, 1, 2, 3}});
  auto e1 = fixture("E1");
  auto d  = lpa_descriptor(e1, e1.vertex("v2"));
  CHECK(d == Descriptor{0, {0, 1, 1}});
  CHECK(d.n() == 3);
  CHECK(render_descriptor(d) == "M3(K)(0,1,1)");
  CHECK(render_descriptor(lpa_descriptor(f1, f1.vertex("v3"))) == "M4(K[x^2,x^-2])(0,1,1,2)");
  CHECK_THROWS_AS(lpa_descriptor(fixture("F"), 0), ScopeError);

  auto f = fixture("F");
  auto blocks = lpa_descriptors_acyclic(f);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == Descriptor{0, {0, 1, 2}});
  CHECK(blocks[1] == Descriptor{0, {0, 1, 2}});
}

TEST_CASE("apply_move", "[shift]") {
  Descriptor d{2, {0, 1, 1, 2}};
  auto       d1 = apply_move(d, GlobalShift{1});
  CHECK(d1.shifts == std::vector<long>{1, 2, 2, 3});
  auto d2 = apply_move(d1, UnitShift{1, -2});
  CHECK(d2.shifts == std::vector<long>{1, 0, 2, 3});
  CHECK(apply_move(d, Permute{{0, 1, 2, 3}}) == d);
  CHECK(apply_move(d2, Permute{{1, 0, 2, 3}}).shifts == std::vector<long>{0, 1, 2, 3});

  CHECK_THROWS_AS(apply_move(d, UnitShift{0, 1}), Error);
  CHECK_THROWS_AS(apply_move(d, UnitShift{0, 0}), Error);
  CHECK_THROWS_AS(apply_move(d, UnitShift{4, 2}), Error);
  CHECK_THROWS_AS(apply_move(Descriptor{0, {0, 1}}, UnitShift{0, 2}), Error);
  CHECK_THROWS_AS(apply_move(d, Permute{{0, 0, 1, 2}}), Error);
}

TEST_CASE("find_move_sequence", "[shift]") {
  Descriptor a{2, {0, 1, 1, 2}};
  Descriptor b{2, {0, 1, 2, 3}};
  auto       chain = find_move_sequence(a, b, 1);
  REQUIRE(chain);
  CHECK(*chain == std::vector<Move>{GlobalShift{1}, UnitShift{1, -2}, Permute{{1, 0, 2, 3}}});
  CHECK(apply_moves(a, *chain) == b);

  auto any = find_move_sequence(a, b);
  REQUIRE(any);
  CHECK(apply_moves(a, *any) == b);

  CHECK_FALSE(find_move_sequence(Descriptor{2, {0, 0, 1, 1}}, Descriptor{2, {0, 1, 1, 1}}));
  CHECK(find_move_sequence(a, a) == std::vector<Move>{});
  CHECK_FALSE(find_move_sequence(a, Descriptor{3, {0, 1, 1, 2}}));
  CHECK_FALSE(find_move_sequence(a, Descriptor{2, {0, 1, 1}}));

  Descriptor t1{0, {0, 1, 1}}, t2{0, {1, 0, 1}}, t3{0, {0, 1, 2}};
  auto       tm = find_move_sequence(t1, t2);
  REQUIRE(tm);
  CHECK(apply_moves(t1, *tm) == t2);
  CHECK_FALSE(find_move_sequence(t1, t3));
}

TEST_CASE("moves keep the residue multiset up to a global constant", "[shift][property]") {
  std::mt19937 rng(5);
  for (int t = 0; t < 300; ++t) {
    std::size_t s = 1 + rng() % 4;
    std::size_t n = 1 + rng() % 6;
    Descriptor  a{s, {}};
    for (std::size_t i = 0; i < n; ++i) {
      a.shifts.push_back(static_cast<long>(rng() % 9) - 4);
    }
    Descriptor b = a;
    long       shift = 0;
    for (int m = 0; m < 5; ++m) {
      Move mv;
      switch (rng() % 3) {
        case 0: {
          Permute p{std::vector<std::size_t>(n)};
          std::iota(p.pi.begin(), p.pi.end(), 0);
          std::shuffle(p.pi.begin(), p.pi.end(), rng);
          mv = p;
          break;
        }
        case 1: {
          long delta = static_cast<long>(rng() % 7) - 3;
          shift += delta;
          mv = GlobalShift{delta};
          break;
        }
        default: {
          long k = static_cast<long>(rng() % 5) - 2;
          mv     = UnitShift{rng() % n, (k == 0 ? 1 : k) * static_cast<long>(s)};
        }
      }
      b = apply_move(b, mv);
    }
    Descriptor expected = a;
    for (auto& g : expected.shifts) {
      g += shift;
    }
    CHECK(residues(b) == residues(expected));
    auto chain = find_move_sequence(a, b);
    REQUIRE(chain);
    CHECK(apply_moves(a, *chain) == b);
  }
}

TEST_CASE("realize_matrix_iso", "[shift]") {
  Descriptor d{2, {0, 1, 1, 2}};
  long       delta = 4;
  auto       f     = realize_matrix_iso(d, {UnitShift{0, delta}});
  CHECK(f(MatrixUnit{0, 2, 6}) == MatrixUnit{0, 2, 6 - delta});
  CHECK(f(MatrixUnit{3, 0, 6}) == MatrixUnit{3, 0, 6 + delta});
  CHECK(f(MatrixUnit{0, 0, 6}) == MatrixUnit{0, 0, 6});
  auto id = realize_matrix_iso(d, {GlobalShift{0}});
  CHECK(id(MatrixUnit{1, 2, -2}) == MatrixUnit{1, 2, -2});
  CHECK_THROWS_AS(realize_matrix_iso(d, {UnitShift{0, 1}}), Error);
  CHECK_THROWS_AS(f(MatrixUnit{0, 0, 1}), Error);
}

TEST_CASE("realized isomorphisms preserve entry degrees", "[shift][property]") {
  std::vector<std::pair<Descriptor, std::vector<Move>>> cases{
      {Descriptor{2, {0, 1, 1, 2}}, {GlobalShift{1}, UnitShift{1, -2}, Permute{{1, 0, 2, 3}}}},
      {Descriptor{3, {0, 2, 1}}, {UnitShift{2, 3}, Permute{{2, 0, 1}}, GlobalShift{-4}}},
      {Descriptor{1, {0, 0}}, {UnitShift{0, -1}, UnitShift{1, 2}, Permute{{1, 0}}}},
      {Descriptor{0, {0, 1, 1}}, {Permute{{2, 1, 0}}, GlobalShift{3}}},
  };
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    std::size_t s = 1 + rng() % 3, n = 1 + rng() % 4;
    Descriptor  d{s, {}};
    for (std::size_t i = 0; i < n; ++i) {
      d.shifts.push_back(static_cast<long>(rng() % 5));
    }
    std::vector<Move>        moves;
    std::vector<std::size_t> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::shuffle(pi.begin(), pi.end(), rng);
    moves.push_back(UnitShift{rng() % n, static_cast<long>(s) * (1 + static_cast<long>(rng() % 2))});
    moves.push_back(Permute{pi});
    moves.push_back(GlobalShift{static_cast<long>(rng() % 5) - 2});
    cases.emplace_back(d, moves);
  }
  for (auto const& [d, moves] : cases) {
    auto target = apply_moves(d, moves);
    auto f      = realize_matrix_iso(d, moves);
    long s      = static_cast<long>(d.step);
    long bound  = s == 0 ? 0 : 3 * s;
    for (std::size_t i = 0; i < d.n(); ++i) {
      for (std::size_t j = 0; j < d.n(); ++j) {
        for (long m = -bound; m <= bound; m += (s == 0 ? 1 : s)) {
          auto u = f(MatrixUnit{i, j, m});
          CHECK(entry_degree(target, u.row, u.col, u.exponent) == entry_degree(d, i, j, m));
        }
      }
    }
  }
}

TEST_CASE("move JSON", "[shift][json]") {
  std::vector<Move> moves{GlobalShift{1}, UnitShift{1, -2}, Permute{{1, 0, 2, 3}}};
  auto              j = moves_to_json(moves);
  CHECK(j == nlohmann::json::parse(R"([{"kind":"global","delta":1},
                                      {"kind":"unit","index":2,"delta":-2},
                                      {"kind":"permute","pi":[2,1,3,4]}])"));
  CHECK(moves_from_json(j) == moves);
  CHECK_THROWS_AS(move_from_json(nlohmann::json::parse(R"({"kind":"twist"})")), Error);
  CHECK(render_move(moves[1]) == "UnitShift(2,-2)");
}
