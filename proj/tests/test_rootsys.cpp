#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bruhat_oracle.hpp"
#include "errors.hpp"
#include "rootsys.hpp"

#include <algorithm>
#include <set>

using namespace toda;

namespace {

// Library element id -> oracle id, matched through reduced words.
std::vector<int> oracle_ids(const WeylGroup& wg,
                            const bruhat_oracle::Group& orc) {
  const int r = wg.rs.rank;
  std::vector<int> map(wg.size());
  for (const auto& el : wg.elements) {
    Eigen::MatrixXi m = Eigen::MatrixXi::Identity(r, r);
    for (int s : el.word) m = m * orc.gens[s];
    map[el.id] = orc.id_of(m);
  }
  return map;
}

}  // namespace

TEST_CASE("root counts, cartan matrices, closure under negation") {
  auto a2 = build_root_system(AlgebraType::A, 2);
  CHECK(a2.rank == 2);
  CHECK(a2.n_positive == 3);
  CHECK(a2.root_count() == 6);
  Eigen::MatrixXi ca2(2, 2);
  ca2 << 2, -1, -1, 2;
  CHECK(a2.cartan == ca2);

  auto b2 = build_root_system(AlgebraType::B, 2);
  CHECK(b2.n_positive == 4);
  Eigen::MatrixXi cb2(2, 2);
  cb2 << 2, -1, -2, 2;
  CHECK(b2.cartan == cb2);

  for (const auto& rs : {a2, b2}) {
    for (int k = 0; k < rs.root_count(); ++k) {
      CHECK(rs.negate(rs.negate(k)) == k);
      CHECK(rs.roots[rs.negate(k)] == -rs.roots[k]);
      CHECK(rs.is_positive(k) == !rs.is_positive(rs.negate(k)));
      // pairing must be an exact Cartan integer in [-3, 3]
      for (int l = 0; l < rs.root_count(); ++l) {
        int p = rs.pairing(k, l);
        CHECK(std::abs(p) <= 3);
      }
    }
    // positive roots sorted by height
    for (int k = 1; k < rs.n_positive; ++k)
      CHECK(rs.roots[k - 1].sum() <= rs.roots[k].sum());
  }

  // long roots have gram norm 2, B2 short roots norm 1
  CHECK(a2.norm2(0) == doctest::Approx(2.0));
  std::multiset<int> b2norms;
  for (int k = 0; k < b2.n_positive; ++k)
    b2norms.insert(static_cast<int>(std::lround(b2.norm2(k))));
  CHECK(b2norms == std::multiset<int>({1, 1, 2, 2}));

  CHECK_THROWS_AS(build_root_system(AlgebraType::C, 3), ConfigError);
  CHECK_THROWS_AS(build_root_system(AlgebraType::B, 3), ConfigError);
  CHECK_THROWS_AS(build_root_system(AlgebraType::A, 5), ConfigError);
  CHECK_THROWS_AS(build_root_system(AlgebraType::A, 0), ConfigError);
}

TEST_CASE("simple-root indexing and coroot coordinates") {
  auto b2 = build_root_system(AlgebraType::B, 2);
  for (int i = 0; i < 2; ++i) {
    int k = b2.simple_root_index(i);
    CHECK(b2.roots[k].sum() == 1);
    CHECK(b2.roots[k](i) == 1);
    Eigen::VectorXi cv = b2.coroot_coords(k);
    Eigen::VectorXi want = Eigen::VectorXi::Zero(2);
    want(i) = 1;
    CHECK(cv == want);
  }
  // highest root of B2 is a1 + 2 a2 (long); its coroot is a1^vee + a2^vee
  int hi = b2.n_positive - 1;
  Eigen::VectorXi hr(2);
  hr << 1, 2;
  CHECK(b2.roots[hi] == hr);
  Eigen::VectorXi hc(2);
  hc << 1, 1;
  CHECK(b2.coroot_coords(hi) == hc);
}

TEST_CASE("weyl group sizes, longest lengths, canonical ordering") {
  struct Row {
    AlgebraType type;
    int rank;
    int size;
    int longest;
  };
  for (Row row : {Row{AlgebraType::A, 1, 2, 1}, Row{AlgebraType::A, 2, 6, 3},
                  Row{AlgebraType::A, 3, 24, 6},
                  Row{AlgebraType::A, 4, 120, 10},
                  Row{AlgebraType::B, 2, 8, 4}}) {
    auto wg = enumerate_weyl(build_root_system(row.type, row.rank));
    CHECK(wg.size() == row.size);
    CHECK(wg.identity_id == 0);
    CHECK(wg.longest_id == row.size - 1);
    CHECK(wg.elements[wg.longest_id].length == row.longest);
    for (int a = 1; a < wg.size(); ++a) {
      const auto& prev = wg.elements[a - 1];
      const auto& cur = wg.elements[a];
      CHECK(std::make_pair(prev.length, prev.word) <
            std::make_pair(cur.length, cur.word));
      CHECK(static_cast<int>(cur.word.size()) == cur.length);
    }
  }
}

TEST_CASE("group axioms hold in A3") {
  auto wg = enumerate_weyl(build_root_system(AlgebraType::A, 3));
  for (int a = 0; a < wg.size(); ++a) {
    CHECK(wg.mul(a, wg.inverse(a)) == wg.identity_id);
    CHECK(wg.mul(wg.identity_id, a) == a);
    for (int b = 0; b < wg.size(); ++b)
      for (int c = 0; c < wg.size(); ++c)
        CHECK(wg.mul(wg.mul(a, b), c) == wg.mul(a, wg.mul(b, c)));
  }
}

TEST_CASE("root actions are negation-equivariant permutations composing with mul") {
  for (auto [type, rank] : {std::pair{AlgebraType::A, 3},
                            std::pair{AlgebraType::B, 2}}) {
    auto wg = enumerate_weyl(build_root_system(type, rank));
    const auto& rs = wg.rs;
    for (int a = 0; a < wg.size(); ++a) {
      std::set<int> image;
      for (int k = 0; k < rs.root_count(); ++k) {
        image.insert(wg.apply(a, k));
        CHECK(wg.apply(a, rs.negate(k)) == rs.negate(wg.apply(a, k)));
      }
      CHECK(static_cast<int>(image.size()) == rs.root_count());
      for (int b = 0; b < wg.size(); ++b) {
        int ab = wg.mul(a, b);
        for (int k = 0; k < rs.root_count(); ++k)
          CHECK(wg.apply(ab, k) == wg.apply(a, wg.apply(b, k)));
        CHECK(wg.elements[ab].coweight_action ==
              wg.elements[a].coweight_action * wg.elements[b].coweight_action);
      }
    }
  }
}

TEST_CASE("reflections square to identity and know their root") {
  auto wg = enumerate_weyl(build_root_system(AlgebraType::B, 2));
  CHECK(static_cast<int>(wg.reflection_by_root.size()) == wg.rs.n_positive);
  for (int k = 0; k < wg.rs.n_positive; ++k) {
    int t = wg.reflection_by_root[k];
    CHECK(wg.is_reflection(t));
    CHECK(wg.reflection_root(t) == k);
    CHECK(wg.mul(t, t) == wg.identity_id);
    // sigma_alpha(alpha) = -alpha
    CHECK(wg.apply(t, k) == wg.rs.negate(k));
  }
  CHECK(wg.reflection_root(wg.identity_id) == -1);
}

TEST_CASE("strong order equals the subword oracle on A1, A2, A3, B2") {
  for (auto [type, rank] : {std::pair{AlgebraType::A, 1},
                            std::pair{AlgebraType::A, 2},
                            std::pair{AlgebraType::A, 3},
                            std::pair{AlgebraType::B, 2}}) {
    auto wg = enumerate_weyl(build_root_system(type, rank));
    auto strong = bruhat_poset(wg, OrderKind::Strong);
    auto orc = bruhat_oracle::enumerate(wg.rs.cartan);
    REQUIRE(static_cast<int>(orc.mats.size()) == wg.size());
    auto ids = oracle_ids(wg, orc);
    for (int a = 0; a < wg.size(); ++a)
      for (int b = 0; b < wg.size(); ++b)
        CHECK(strong.leq(a, b) == bruhat_oracle::leq(orc, ids[a], ids[b]));
  }
}

TEST_CASE("frozen A2 strong-order shape") {
  auto wg = enumerate_weyl(build_root_system(AlgebraType::A, 2));
  auto strong = bruhat_poset(wg, OrderKind::Strong);
  CHECK(strong.strict_pairs().size() == 13);
  CHECK(strong.covers.size() == 8);
  // exactly two incomparable unordered pairs: {s1, s2} and {s1s2, s2s1}
  int incomparable = 0;
  for (int a = 0; a < wg.size(); ++a)
    for (int b = a + 1; b < wg.size(); ++b)
      if (!strong.leq(a, b) && !strong.leq(b, a)) ++incomparable;
  CHECK(incomparable == 2);
}

TEST_CASE("frozen B2 strong-order shape: dihedral order by length") {
  auto wg = enumerate_weyl(build_root_system(AlgebraType::B, 2));
  auto strong = bruhat_poset(wg, OrderKind::Strong);
  CHECK(strong.strict_pairs().size() == 25);
  CHECK(strong.covers.size() == 12);
  for (int a = 0; a < wg.size(); ++a)
    for (int b = 0; b < wg.size(); ++b) {
      bool want = a == b || wg.elements[a].length < wg.elements[b].length;
      CHECK(strong.leq(a, b) == want);
    }
}

TEST_CASE("strong covers raise length by one through a reflection") {
  for (auto [type, rank] : {std::pair{AlgebraType::A, 3},
                            std::pair{AlgebraType::B, 2}}) {
    auto wg = enumerate_weyl(build_root_system(type, rank));
    auto strong = bruhat_poset(wg, OrderKind::Strong);
    for (auto [lo, hi] : strong.covers) {
      CHECK(wg.elements[hi].length == wg.elements[lo].length + 1);
      int t = wg.mul(hi, wg.inverse(lo));
      CHECK(wg.is_reflection(t));
      CHECK(wg.mul(t, lo) == hi);
    }
  }
}

TEST_CASE("weak orders are strict subrelations of the strong order") {
  for (auto [type, rank] : {std::pair{AlgebraType::A, 2},
                            std::pair{AlgebraType::A, 3},
                            std::pair{AlgebraType::B, 2}}) {
    auto wg = enumerate_weyl(build_root_system(type, rank));
    auto strong = bruhat_poset(wg, OrderKind::Strong);
    for (OrderKind kind : {OrderKind::WeakLeft, OrderKind::WeakRight}) {
      auto weak = bruhat_poset(wg, kind);
      auto wp = weak.strict_pairs();
      auto sp = strong.strict_pairs();
      CHECK(std::includes(sp.begin(), sp.end(), wp.begin(), wp.end()));
      CHECK(wp.size() < sp.size());
      // weak covers multiply by one simple reflection on the proper side
      for (auto [lo, hi] : weak.covers) {
        CHECK(wg.elements[hi].length == wg.elements[lo].length + 1);
        int t = kind == OrderKind::WeakLeft ? wg.mul(hi, wg.inverse(lo))
                                            : wg.mul(wg.inverse(lo), hi);
        int root = wg.reflection_root(t);
        REQUIRE(root >= 0);
        CHECK(wg.rs.roots[root].sum() == 1);
      }
    }
  }
}

TEST_CASE("frozen A2 weak-order shape") {
  auto wg = enumerate_weyl(build_root_system(AlgebraType::A, 2));
  for (OrderKind kind : {OrderKind::WeakLeft, OrderKind::WeakRight}) {
    auto weak = bruhat_poset(wg, kind);
    CHECK(weak.strict_pairs().size() == 11);
    CHECK(weak.covers.size() == 6);
  }
}

TEST_CASE("order kind names round trip") {
  for (OrderKind k : {OrderKind::Strong, OrderKind::WeakLeft,
                      OrderKind::WeakRight})
    CHECK(order_kind_from_name(order_kind_name(k)) == k);
  CHECK_THROWS_AS(order_kind_from_name("sideways"), ConfigError);
  CHECK(algebra_type_from_letter('a') == AlgebraType::A);
  CHECK_THROWS_AS(algebra_type_from_letter('x'), ConfigError);
}
