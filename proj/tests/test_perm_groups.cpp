#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "finitude/error.hpp"
#include "finitude/perm_group.hpp"

using namespace finitude;

namespace {

// Closure by breadth-first multiplication; independent of the stabilizer chain.
std::set<Perm> brute_closure(int n, const std::vector<Perm>& gens) {
  std::set<Perm> seen{perm_identity(n)};
  std::vector<Perm> frontier{perm_identity(n)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = perm_mul(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

// Derived subgroup as the closure of all commutators of all element pairs.
std::set<Perm> brute_derived(int n, const std::set<Perm>& elems) {
  std::vector<Perm> comms;
  std::set<Perm> uniq;
  for (const auto& a : elems)
    for (const auto& b : elems)
      uniq.insert(perm_mul(perm_mul(perm_inverse(a), perm_inverse(b)), perm_mul(a, b)));
  comms.assign(uniq.begin(), uniq.end());
  return brute_closure(n, comms);
}

bool brute_solvable(int n, std::set<Perm> elems) {
  while (elems.size() > 1) {
    auto d = brute_derived(n, elems);
    if (d.size() == elems.size()) return false;
    elems = d;
  }
  return true;
}

Perm random_perm(std::mt19937& rng, int n) {
  Perm p = perm_identity(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

PermGroup cycles(int n, std::initializer_list<const char*> gens) {
  std::vector<Perm> g;
  for (const char* s : gens) g.push_back(perm_from_cycles(s, n));
  return PermGroup(n, g);
}

// AGL(3,2) acting on F_2^3 with points labeled by their bit patterns.
PermGroup agl32() {
  auto affine = [](int m0, int m1, int m2, int shift) {
    Perm p(8);
    for (int x = 0; x < 8; ++x) {
      int y = 0;
      if (x & 1) y ^= m0;
      if (x & 2) y ^= m1;
      if (x & 4) y ^= m2;
      p[x] = y ^ shift;
    }
    return p;
  };
  return PermGroup(8, {affine(1, 2, 4, 1), affine(1, 3, 4, 0), affine(2, 4, 1, 0)});
}

// GL(3,2) acting on the seven nonzero vectors of F_2^3.
PermGroup gl32_on_lines() {
  auto linear = [](int m0, int m1, int m2) {
    Perm p(7);
    for (int x = 1; x < 8; ++x) {
      int y = 0;
      if (x & 1) y ^= m0;
      if (x & 2) y ^= m1;
      if (x & 4) y ^= m2;
      p[x - 1] = y - 1;
    }
    return p;
  };
  return PermGroup(7, {linear(1, 3, 4), linear(2, 4, 1)});
}

// S_m wr S_2 in its imprimitive action on 2m points.
PermGroup wreath(int m) {
  int n = 2 * m;
  Perm t = perm_identity(n), c = perm_identity(n), sw(n);
  std::swap(t[0], t[1]);
  for (int i = 0; i < m; ++i) c[i] = (i + 1) % m;
  for (int i = 0; i < m; ++i) {
    sw[i] = i + m;
    sw[i + m] = i;
  }
  return PermGroup(n, {t, c, sw});
}

}  // namespace

TEST_CASE("cycle notation round-trips") {
  Perm p = perm_from_cycles("(1 2)(3 4 5)", 6);
  CHECK(perm_to_cycles(p) == "(1 2)(3 4 5)");
  CHECK(perm_to_cycles(perm_identity(4)) == "()");
  CHECK(perm_order(p) == 6);
  CHECK(perm_cycle_type(p) == std::vector<int>{3, 2, 1});
  CHECK_THROWS_AS(perm_from_cycles("(1 1)", 3), Error);
  CHECK_THROWS_AS(perm_from_cycles("(1 7)", 3), Error);
}

TEST_CASE("group order examples") {
  CHECK(cycles(5, {"(1 2)", "(1 2 3 4 5)"}).order() == 120);
  CHECK(cycles(3, {"(1 2 3)"}).order() == 3);
  CHECK(PermGroup(4, {}).order() == 1);
  CHECK(agl32().order() == 1344);
  CHECK_THROWS_AS(group_order(PermGroup::symmetric(40)), Error);
  CHECK(group_order(PermGroup::symmetric(12)) == 479001600);
}

TEST_CASE("stabilizer chain order equals brute-force closure") {
  std::mt19937 rng(42);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + t % 7;
    int k = 1 + t % 3;
    std::vector<Perm> gens;
    for (int i = 0; i < k; ++i) gens.push_back(random_perm(rng, n));
    if (t % 4 == 0) gens = {perm_pow(gens[0], 2)};
    PermGroup g(n, gens);
    auto closure = brute_closure(n, gens);
    CHECK(g.order() == static_cast<unsigned long>(closure.size()));
    std::size_t visited = 0;
    g.for_each_element([&](const Perm& p) {
      CHECK(closure.count(p) == 1);
      ++visited;
      return true;
    });
    CHECK(visited == closure.size());
    for (int s = 0; s < 5; ++s) {
      Perm x = random_perm(rng, n);
      CHECK(g.contains(x) == (closure.count(x) == 1));
    }
  }
}

TEST_CASE("derived series and solvability") {
  PermGroup s4 = PermGroup::symmetric(4);
  auto series = derived_series(s4);
  REQUIRE(series.size() == 4);
  CHECK(series[1].order() == 12);
  CHECK(series[2].order() == 4);
  CHECK(series[3].order() == 1);
  CHECK(is_solvable(s4));
  PermGroup s5 = cycles(5, {"(1 2)", "(1 2 3 4 5)"});
  auto s5_series = derived_series(s5);
  CHECK(s5_series.back().order() == 60);
  CHECK_FALSE(is_solvable(s5));
  CHECK(is_solvable(PermGroup(3, {})));
  std::mt19937 rng(4);
  for (int t = 0; t < 40; ++t) {
    int n = 3 + t % 4;
    std::vector<Perm> gens{random_perm(rng, n), random_perm(rng, n)};
    if (t % 3 == 0) gens = {perm_pow(gens[0], 1), perm_pow(gens[0], 3)};
    PermGroup g(n, gens);
    auto closure = brute_closure(n, gens);
    CHECK(derived_subgroup(g).order() == static_cast<unsigned long>(brute_derived(n, closure).size()));
    CHECK(is_solvable(g) == brute_solvable(n, closure));
  }
}

TEST_CASE("orbits, blocks and primitivity") {
  PermGroup z4 = PermGroup::cyclic(4);
  CHECK_FALSE(is_primitive(z4));
  auto blocks = minimal_block_system(z4, 2);
  CHECK(blocks == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
  CHECK(is_primitive(PermGroup::symmetric(5)));
  CHECK(is_primitive(PermGroup::cyclic(7)));
  CHECK_FALSE(is_primitive(wreath(3)));
  CHECK_THROWS_AS(is_primitive(cycles(4, {"(1 2)"})), Error);
  CHECK(cycles(6, {"(1 2)(4 5 6)"}).orbits().size() == 3);
}

TEST_CASE("block systems agree with brute-force enumeration at degree 4") {
  std::mt19937 rng(8);
  for (int t = 0; t < 30; ++t) {
    PermGroup g(4, {random_perm(rng, 4), random_perm(rng, 4)});
    if (!g.is_transitive()) continue;
    // The three partitions of four points into pairs.
    const int pairs[3][4] = {{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}};
    bool any_block = false;
    for (const auto& part : pairs) {
      bool preserved = true;
      for (const auto& s : g.generators())
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            if (part[a] == part[b] && part[s[a]] != part[s[b]]) preserved = false;
      any_block = any_block || preserved;
    }
    CHECK(is_primitive(g) == !any_block);
  }
}

TEST_CASE("full cycles") {
  auto r = find_full_cycle(PermGroup::symmetric(5));
  CHECK(r.status == FullCycleSearch::Status::Found);
  CHECK(perm_cycle_type(r.cycle)[0] == 5);
  CHECK(has_full_cycle(PermGroup::dihedral(6)));
  CHECK_FALSE(has_full_cycle(cycles(4, {"(1 2)(3 4)", "(1 3)(2 4)"})));
  CHECK(has_full_cycle(PermGroup::alternating(11)));
  CHECK_FALSE(has_full_cycle(PermGroup::alternating(6)));
}

TEST_CASE("k-solvability") {
  PermGroup s5 = cycles(5, {"(1 2)", "(1 2 3 4 5)"});
  CHECK(is_k_solvable(s5, 5).value);
  auto r4 = is_k_solvable(s5, 4);
  CHECK_FALSE(r4.value);
  CHECK(r4.reason.find("A5") != std::string::npos);
  CHECK(is_k_solvable(PermGroup::cyclic(9), 1).value);
  CHECK(is_k_solvable(PermGroup::symmetric(4), 1).value);
  PermGroup psl27 = gl32_on_lines();
  CHECK(psl27.order() == 168);
  CHECK_FALSE(is_k_solvable(psl27, 6).value);
  CHECK(is_k_solvable(psl27, 7).value);
  PermGroup agl = agl32();
  CHECK_FALSE(is_k_solvable(agl, 6).value);
  auto r7 = is_k_solvable(agl, 7);
  CHECK(r7.value);
  bool saw = false;
  for (const auto& f : r7.witness)
    if (!f.abelian && f.name == "PSL(2,7)") saw = true;
  CHECK(saw);
  PermGroup w = wreath(5);
  auto wf = composition_factors(w);
  int a5 = 0;
  for (const auto& f : wf)
    if (f.name == "A5") ++a5;
  CHECK(a5 == 2);
  CHECK(is_k_solvable(w, 5).value);
  CHECK_FALSE(is_k_solvable(w, 4).value);
  CHECK_FALSE(is_k_solvable(PermGroup::symmetric(6), 5).value);
  CHECK(is_k_solvable(PermGroup::symmetric(6), 6).value);
}

TEST_CASE("solvable implies k-solvable and k-solvability is monotone") {
  std::vector<PermGroup> corpus{PermGroup::symmetric(4), PermGroup::dihedral(7), PermGroup::cyclic(8),
                                PermGroup::symmetric(5), PermGroup::alternating(6), wreath(3),
                                wreath(5), agl32(), PermGroup::symmetric(7)};
  for (const auto& g : corpus) {
    bool solvable = is_solvable(g);
    bool prev = false;
    for (int k = 1; k <= g.degree() + 1; ++k) {
      bool v = is_k_solvable(g, k).value;
      if (solvable) CHECK(v);
      if (prev) CHECK(v);
      prev = v;
    }
    CHECK(prev);
  }
}

TEST_CASE("monodromy pairs and almost normality") {
  PermGroup s5 = PermGroup::symmetric(5);
  GroupPair pair = monodromy_pair(s5);
  CHECK(pair.subgroup.order() == 24);
  AlmostNormal an = is_almost_normal(pair);
  CHECK(an.value);
  // The witnesses really intersect to the identity.
  std::set<Perm> inter;
  s5.for_each_element([&](const Perm& p) {
    inter.insert(p);
    return true;
  });
  for (const auto& a : an.conjugators) {
    std::set<Perm> keep;
    for (const auto& p : inter) {
      Perm c = perm_mul(perm_mul(a, p), perm_inverse(a));
      if (pair.subgroup.contains(c)) keep.insert(p);
    }
    inter = keep;
  }
  CHECK(inter.size() == 1);
  GroupPair trivial = monodromy_pair(PermGroup(1, {}));
  CHECK(is_almost_normal(trivial).value);
  GroupPair reg = monodromy_pair(PermGroup::cyclic(6));
  CHECK(reg.subgroup.order() == 1);
  CHECK(is_almost_normal(reg).value);
}

TEST_CASE("primitive solvable groups with a full cycle") {
  PermGroup d5 = cycles(5, {"(1 2 3 4 5)", "(2 5)(3 4)"});
  CHECK(d5.order() == 10);
  auto c = classify_primitive_solvable_with_cycle(d5);
  CHECK(c.kind == AffineClassification::Kind::Affine);
  CHECK(c.p == 5);
  REQUIRE(c.maps.size() == 2);
  CHECK(c.maps[0] == std::make_pair(1, 1));
  CHECK(c.maps[1] == std::make_pair(4, 0));
  for (std::size_t g = 0; g < d5.generators().size(); ++g) {
    const Perm& s = d5.generators()[g];
    for (int q = 0; q < 5; ++q)
      CHECK(c.label[s[q]] == (c.maps[g].first * c.label[q] + c.maps[g].second) % 5);
  }
  CHECK(classify_primitive_solvable_with_cycle(PermGroup::symmetric(4)).kind ==
        AffineClassification::Kind::SizeFour);
  auto z7 = classify_primitive_solvable_with_cycle(PermGroup::cyclic(7));
  CHECK(z7.p == 7);
  CHECK(z7.maps[0].first == 1);
  CHECK_THROWS_AS(classify_primitive_solvable_with_cycle(PermGroup::symmetric(5)), Error);
  CHECK_THROWS_AS(classify_primitive_solvable_with_cycle(PermGroup::cyclic(6)), Error);
}
