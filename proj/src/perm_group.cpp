#include "finitude/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "finitude/error.hpp"

namespace finitude {

// ---------------------------------------------------------------------------
// Permutations

Perm perm_identity(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<std::size_t>(a[i])];
  return r;
}

Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  return r;
}

Perm perm_pow(const Perm& a, long e) {
  Perm base = e < 0 ? perm_inverse(a) : a;
  if (e < 0) e = -e;
  Perm r = perm_identity(static_cast<int>(a.size()));
  while (e > 0) {
    if (e & 1) r = perm_mul(r, base);
    e >>= 1;
    if (e) base = perm_mul(base, base);
  }
  return r;
}

bool perm_is_identity(const Perm& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> perm_cycle_type(const Perm& a) {
  std::vector<int> lengths;
  std::vector<bool> seen(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(a[j])) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

long perm_order(const Perm& a) {
  long l = 1;
  for (int c : perm_cycle_type(a)) l = std::lcm(l, static_cast<long>(c));
  return l;
}

std::string perm_to_cycles(const Perm& a) {
  std::string out;
  std::vector<bool> seen(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i] || a[i] == static_cast<int>(i)) continue;
    out += "(";
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(a[j])) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Perm perm_from_cycles(const std::string& text, int n) {
  Perm p = perm_identity(n);
  std::size_t i = 0;
  auto bad = [&](const std::string& why) { fail(ErrorCode::InvalidArgument, "bad cycle notation: " + why); };
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') bad("expected '('");
    ++i;
    std::vector<int> cyc;
    while (true) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) bad("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) bad("expected a point");
      int v = std::stoi(text.substr(start, i - start));
      if (v < 1 || v > n) bad("point out of range");
      if (used[static_cast<std::size_t>(v - 1)]) bad("point repeated");
      used[static_cast<std::size_t>(v - 1)] = true;
      cyc.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) p[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
  }
  return p;
}

// ---------------------------------------------------------------------------
// Stabilizer chain (deterministic Schreier-Sims)

struct Level {
  int base_point = 0;
  std::vector<Perm> gens;
  std::vector<int> orbit;
  std::vector<Perm> transversal;  // indexed by point; empty when outside the orbit
  std::vector<Perm> inverse;
};

struct StabilizerChain {
  int degree = 0;
  std::vector<Level> levels;
};

struct ChainCache {
  std::once_flag once;
  StabilizerChain chain;
};

namespace {

void compute_orbit(Level& lv, int n) {
  lv.transversal.assign(static_cast<std::size_t>(n), Perm());
  lv.inverse.assign(static_cast<std::size_t>(n), Perm());
  lv.orbit.clear();
  lv.transversal[static_cast<std::size_t>(lv.base_point)] = perm_identity(n);
  lv.orbit.push_back(lv.base_point);
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    int p = lv.orbit[k];
    for (const auto& s : lv.gens) {
      int q = s[static_cast<std::size_t>(p)];
      if (lv.transversal[static_cast<std::size_t>(q)].empty()) {
        lv.transversal[static_cast<std::size_t>(q)] = perm_mul(lv.transversal[static_cast<std::size_t>(p)], s);
        lv.orbit.push_back(q);
      }
    }
  }
  for (int p : lv.orbit) lv.inverse[static_cast<std::size_t>(p)] = perm_inverse(lv.transversal[static_cast<std::size_t>(p)]);
}

// Sifts g through levels [from, end); returns the residue and the level where it stopped.
std::pair<Perm, std::size_t> strip(const StabilizerChain& c, Perm g, std::size_t from) {
  for (std::size_t m = from; m < c.levels.size(); ++m) {
    const Level& lv = c.levels[m];
    int beta = g[static_cast<std::size_t>(lv.base_point)];
    if (lv.transversal[static_cast<std::size_t>(beta)].empty()) return {g, m};
    g = perm_mul(g, lv.inverse[static_cast<std::size_t>(beta)]);
  }
  return {g, c.levels.size()};
}

int first_moved_point(const Perm& g, const StabilizerChain& c) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == static_cast<int>(i)) continue;
    bool in_base = false;
    for (const auto& lv : c.levels)
      if (lv.base_point == static_cast<int>(i)) in_base = true;
    if (!in_base) return static_cast<int>(i);
  }
  return -1;
}

StabilizerChain build_chain(int n, const std::vector<Perm>& gens, const std::vector<int>& prefix) {
  StabilizerChain c;
  c.degree = n;
  for (int p : prefix) {
    Level lv;
    lv.base_point = p;
    c.levels.push_back(lv);
  }
  auto add_strong = [&](const Perm& h, std::size_t from) {
    std::size_t j = from;
    while (j < c.levels.size() &&
           h[static_cast<std::size_t>(c.levels[j].base_point)] == c.levels[j].base_point)
      ++j;
    if (j == c.levels.size()) {
      Level lv;
      lv.base_point = first_moved_point(h, c);
      c.levels.push_back(lv);
    }
    for (std::size_t m = from; m <= j; ++m) c.levels[m].gens.push_back(h);
    return j;
  };
  for (const auto& g : gens)
    if (!perm_is_identity(g)) add_strong(g, 0);
  for (auto& lv : c.levels) compute_orbit(lv, n);

  long i = static_cast<long>(c.levels.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    Level& lv = c.levels[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; !restarted && k < lv.orbit.size(); ++k) {
      int beta = lv.orbit[k];
      for (std::size_t si = 0; si < lv.gens.size(); ++si) {
        const Perm& s = lv.gens[si];
        int image = s[static_cast<std::size_t>(beta)];
        Perm sg = perm_mul(perm_mul(lv.transversal[static_cast<std::size_t>(beta)], s),
                           lv.inverse[static_cast<std::size_t>(image)]);
        if (perm_is_identity(sg)) continue;
        auto [h, j] = strip(c, sg, static_cast<std::size_t>(i) + 1);
        if (perm_is_identity(h)) continue;
        if (j == c.levels.size()) {
          Level nl;
          nl.base_point = first_moved_point(h, c);
          c.levels.push_back(nl);
        }
        for (std::size_t m = static_cast<std::size_t>(i) + 1; m <= j; ++m) {
          c.levels[m].gens.push_back(h);
          compute_orbit(c.levels[m], n);
        }
        i = static_cast<long>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
  // Drop trailing trivial levels that a prefix may have introduced.
  while (!c.levels.empty() && c.levels.back().orbit.size() == 1) c.levels.pop_back();
  return c;
}

PermGroup from_level(int n, const StabilizerChain& c, std::size_t level) {
  if (level >= c.levels.size()) return PermGroup(n, {});
  return PermGroup(n, c.levels[level].gens);
}

}  // namespace

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(int degree, std::vector<Perm> generators)
    : degree_(degree), cache_(std::make_shared<ChainCache>()) {
  if (degree < 0) fail(ErrorCode::InvalidArgument, "negative degree");
  for (auto& g : generators) {
    if (static_cast<int>(g.size()) != degree)
      fail(ErrorCode::InvalidArgument, "generator has the wrong degree");
    std::vector<bool> hit(g.size(), false);
    for (int v : g) {
      if (v < 0 || v >= degree || hit[static_cast<std::size_t>(v)])
        fail(ErrorCode::InvalidArgument, "generator is not a bijection");
      hit[static_cast<std::size_t>(v)] = true;
    }
    if (!perm_is_identity(g) && std::find(gens_.begin(), gens_.end(), g) == gens_.end())
      gens_.push_back(std::move(g));
  }
}

const StabilizerChain& PermGroup::chain() const {
  std::call_once(cache_->once, [this] { cache_->chain = build_chain(degree_, gens_, {}); });
  return cache_->chain;
}

PermGroup PermGroup::symmetric(int n) {
  std::vector<Perm> g;
  if (n >= 2) {
    Perm t = perm_identity(n);
    std::swap(t[0], t[1]);
    g.push_back(t);
  }
  if (n >= 3) {
    Perm c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
    g.push_back(c);
  }
  return PermGroup(n, g);
}

PermGroup PermGroup::alternating(int n) {
  std::vector<Perm> g;
  for (int i = 2; i < n; ++i) {
    Perm c = perm_identity(n);
    c[0] = 1;
    c[1] = static_cast<int>(i);
    c[static_cast<std::size_t>(i)] = 0;
    g.push_back(c);
  }
  return PermGroup(n, g);
}

PermGroup PermGroup::cyclic(int n) {
  Perm c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
  return PermGroup(n, {c});
}

PermGroup PermGroup::dihedral(int n) {
  Perm c(static_cast<std::size_t>(n)), r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    c[static_cast<std::size_t>(i)] = (i + 1) % n;
    r[static_cast<std::size_t>(i)] = (n - i) % n;
  }
  return PermGroup(n, {c, r});
}

mpz_class PermGroup::order() const {
  mpz_class o = 1;
  for (const auto& lv : chain().levels) o *= static_cast<unsigned long>(lv.orbit.size());
  return o;
}

bool PermGroup::contains(const Perm& g) const {
  if (static_cast<int>(g.size()) != degree_) return false;
  return perm_is_identity(strip(chain(), g, 0).first);
}

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (perm_mul(gens_[i], gens_[j]) != perm_mul(gens_[j], gens_[i])) return false;
  return true;
}

bool PermGroup::is_subgroup_of(const PermGroup& g) const {
  if (g.degree() != degree_) return false;
  return std::all_of(gens_.begin(), gens_.end(), [&](const Perm& p) { return g.contains(p); });
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<int> comp(static_cast<std::size_t>(degree_), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < degree_; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> orb{s};
    comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (const auto& g : gens_) {
        int q = g[static_cast<std::size_t>(orb[k])];
        if (comp[static_cast<std::size_t>(q)] < 0) {
          comp[static_cast<std::size_t>(q)] = static_cast<int>(out.size());
          orb.push_back(q);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(orb);
  }
  return out;
}

bool PermGroup::is_transitive() const { return degree_ <= 1 || orbits().size() == 1; }

std::vector<int> PermGroup::base() const {
  std::vector<int> b;
  for (const auto& lv : chain().levels) b.push_back(lv.base_point);
  return b;
}

PermGroup PermGroup::stabilizer(int point) const { return pointwise_stabilizer({point}); }

PermGroup PermGroup::pointwise_stabilizer(const std::vector<int>& points) const {
  if (gens_.empty()) return *this;
  StabilizerChain c = build_chain(degree_, gens_, points);
  // build_chain may drop trailing trivial levels, so count the prefix levels that survived.
  std::size_t level = 0;
  while (level < points.size() && level < c.levels.size() && c.levels[level].base_point == points[level])
    ++level;
  if (level < points.size()) return PermGroup(degree_, {});
  return from_level(degree_, c, level);
}

void PermGroup::for_each_element(const std::function<bool(const Perm&)>& visit) const {
  const auto& levels = chain().levels;
  const std::size_t L = levels.size();
  if (L == 0) {
    visit(perm_identity(degree_));
    return;
  }
  // element = u_{L-1} * ... * u_0; prefix[m] holds u_{L-1} * ... * u_m.
  std::vector<std::size_t> idx(L, 0);
  std::vector<Perm> prefix(L + 1);
  prefix[L] = perm_identity(degree_);
  for (std::size_t m = L; m-- > 0;)
    prefix[m] = perm_mul(prefix[m + 1], levels[m].transversal[static_cast<std::size_t>(levels[m].orbit[0])]);
  while (true) {
    if (!visit(prefix[0])) return;
    std::size_t m = 0;
    while (m < L && idx[m] + 1 == levels[m].orbit.size()) {
      idx[m] = 0;
      ++m;
    }
    if (m == L) return;
    ++idx[m];
    for (std::size_t t = m + 1; t-- > 0;) {
      const Level& lv = levels[t];
      prefix[t] = perm_mul(prefix[t + 1], lv.transversal[static_cast<std::size_t>(lv.orbit[idx[t]])]);
    }
  }
}

Perm PermGroup::random_element(std::mt19937_64& rng) const {
  Perm g = perm_identity(degree_);
  const auto& levels = chain().levels;
  for (std::size_t m = levels.size(); m-- > 0;) {
    std::uniform_int_distribution<std::size_t> pick(0, levels[m].orbit.size() - 1);
    g = perm_mul(g, levels[m].transversal[static_cast<std::size_t>(levels[m].orbit[pick(rng)])]);
  }
  return g;
}

mpz_class group_order(const PermGroup& g, int max_degree) {
  if (g.degree() > max_degree)
    fail(ErrorCode::DegreeTooLarge, "group degree " + std::to_string(g.degree()) + " exceeds " +
                                        std::to_string(max_degree));
  return g.order();
}

// ---------------------------------------------------------------------------
// Subgroup constructions

PermGroup normal_closure(const std::vector<Perm>& gens, const PermGroup& g) {
  const int n = g.degree();
  std::vector<Perm> ngens;
  for (const auto& x : gens)
    if (!perm_is_identity(x)) ngens.push_back(x);
  PermGroup current(n, ngens);
  std::deque<Perm> queue(ngens.begin(), ngens.end());
  while (!queue.empty()) {
    Perm x = queue.front();
    queue.pop_front();
    for (const auto& s : g.generators()) {
      Perm c = perm_mul(perm_mul(perm_inverse(s), x), s);
      if (current.contains(c)) continue;
      ngens.push_back(c);
      current = PermGroup(n, ngens);
      queue.push_back(c);
    }
  }
  return current;
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Perm c = perm_mul(perm_mul(perm_inverse(gens[i]), perm_inverse(gens[j])), perm_mul(gens[i], gens[j]));
      if (!perm_is_identity(c)) comms.push_back(c);
    }
  return normal_closure(comms, g);
}

std::vector<PermGroup> derived_series(const PermGroup& g) {
  std::vector<PermGroup> series{g};
  while (!series.back().is_trivial()) {
    PermGroup d = derived_subgroup(series.back());
    if (d.order() == series.back().order()) break;
    series.push_back(d);
  }
  return series;
}

bool is_solvable(const PermGroup& g) { return derived_series(g).back().is_trivial(); }

std::vector<std::vector<int>> minimal_block_system(const PermGroup& g, int a) {
  const int n = g.degree();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x < y) std::swap(x, y);
    parent[static_cast<std::size_t>(x)] = y;
    return true;
  };
  std::deque<std::pair<int, int>> queue;
  if (unite(0, a)) queue.emplace_back(0, a);
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    for (const auto& s : g.generators()) {
      int x = find(s[static_cast<std::size_t>(p)]), y = find(s[static_cast<std::size_t>(q)]);
      if (x != y) {
        unite(x, y);
        queue.emplace_back(x, y);
      }
    }
  }
  std::map<int, std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) blocks[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, b] : blocks) out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_primitive(const PermGroup& g) {
  if (!g.is_transitive()) fail(ErrorCode::NotTransitive, "primitivity needs a transitive group");
  for (int a = 1; a < g.degree(); ++a)
    if (minimal_block_system(g, a).size() > 1) return false;
  return true;
}

FullCycleSearch find_full_cycle(const PermGroup& g, std::size_t enumeration_limit, std::size_t samples) {
  const int n = g.degree();
  FullCycleSearch r;
  auto is_full = [n](const Perm& p) { return n >= 1 && perm_cycle_type(p)[0] == n; };
  if (n == 1) {
    r.status = FullCycleSearch::Status::Found;
    r.cycle = perm_identity(1);
    r.exhaustive = true;
    return r;
  }
  for (const auto& s : g.generators())
    if (is_full(s)) {
      r.status = FullCycleSearch::Status::Found;
      r.cycle = s;
      return r;
    }
  if (!g.is_transitive()) {
    r.status = FullCycleSearch::Status::Absent;
    r.exhaustive = true;
    return r;
  }
  if (g.order() <= enumeration_limit) {
    g.for_each_element([&](const Perm& p) {
      if (!is_full(p)) return true;
      r.cycle = p;
      r.status = FullCycleSearch::Status::Found;
      return false;
    });
    r.exhaustive = true;
    return r;
  }
  std::mt19937_64 rng(0x5eed);
  for (std::size_t t = 0; t < samples; ++t) {
    Perm p = g.random_element(rng);
    long o = perm_order(p);
    if (o % n == 0) {
      Perm q = perm_pow(p, o / n);
      if (is_full(q)) p = q;
    }
    if (is_full(p)) {
      r.status = FullCycleSearch::Status::Found;
      r.cycle = p;
      return r;
    }
  }
  r.status = FullCycleSearch::Status::NotFoundWithinBudget;
  return r;
}

bool has_full_cycle(const PermGroup& g) {
  FullCycleSearch r = find_full_cycle(g);
  if (r.status == FullCycleSearch::Status::NotFoundWithinBudget)
    fail(ErrorCode::SearchBudgetExceeded, "no full cycle found within the sampling budget");
  return r.status == FullCycleSearch::Status::Found;
}

// ---------------------------------------------------------------------------
// Composition factors and k-solvability

namespace {

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct SimpleEntry {
  unsigned long order;
  int min_degree;
  const char* name;
};

// Nonabelian simple groups with a faithful action on at most 32 points,
// other than alternating groups, plus a few just beyond.
const SimpleEntry kSimpleGroups[] = {
    {168, 7, "PSL(2,7)"},        {504, 9, "PSL(2,8)"},        {660, 11, "PSL(2,11)"},
    {1092, 14, "PSL(2,13)"},     {2448, 18, "PSL(2,17)"},     {3420, 20, "PSL(2,19)"},
    {4080, 17, "PSL(2,16)"},     {5616, 13, "PSL(3,3)"},      {6048, 28, "PSU(3,3)"},
    {6072, 24, "PSL(2,23)"},     {7800, 26, "PSL(2,25)"},     {7920, 11, "M11"},
    {9828, 28, "PSL(2,27)"},     {12180, 30, "PSL(2,29)"},    {14880, 32, "PSL(2,31)"},
    {25920, 27, "PSp(4,3)"},     {29120, 65, "Sz(8)"},        {32736, 33, "PSL(2,32)"},
    {95040, 12, "M12"},          {372000, 31, "PSL(3,5)"},    {443520, 22, "M22"},
    {1451520, 28, "PSp(6,2)"},   {9999360, 31, "PSL(5,2)"},   {10200960, 23, "M23"},
    {244823040, 24, "M24"},
};

bool is_prime_long(long v) {
  if (v < 2) return false;
  for (long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

PermGroup restrict_to(const PermGroup& g, const std::vector<int>& points) {
  std::vector<int> index(static_cast<std::size_t>(g.degree()), -1);
  for (std::size_t i = 0; i < points.size(); ++i) index[static_cast<std::size_t>(points[i])] = static_cast<int>(i);
  std::vector<Perm> gens;
  for (const auto& s : g.generators()) {
    Perm r(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) r[i] = index[static_cast<std::size_t>(s[static_cast<std::size_t>(points[i])])];
    gens.push_back(r);
  }
  return PermGroup(static_cast<int>(points.size()), gens);
}

// Image of the action on a block system together with its kernel.
std::pair<PermGroup, PermGroup> block_action(const PermGroup& g, const std::vector<std::vector<int>>& blocks) {
  const int n = g.degree();
  const int m = static_cast<int>(blocks.size());
  std::vector<int> block_of(static_cast<std::size_t>(n));
  for (int b = 0; b < m; ++b)
    for (int p : blocks[static_cast<std::size_t>(b)]) block_of[static_cast<std::size_t>(p)] = b;
  std::vector<Perm> image_gens, combined;
  for (const auto& s : g.generators()) {
    Perm img(static_cast<std::size_t>(m));
    for (int b = 0; b < m; ++b)
      img[static_cast<std::size_t>(b)] = block_of[static_cast<std::size_t>(s[static_cast<std::size_t>(blocks[static_cast<std::size_t>(b)][0])])];
    Perm both(static_cast<std::size_t>(n + m));
    for (int i = 0; i < n; ++i) both[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)];
    for (int b = 0; b < m; ++b) both[static_cast<std::size_t>(n + b)] = n + img[static_cast<std::size_t>(b)];
    image_gens.push_back(img);
    combined.push_back(both);
  }
  PermGroup c(n + m, combined);
  std::vector<int> block_points(static_cast<std::size_t>(m));
  std::iota(block_points.begin(), block_points.end(), n);
  PermGroup k = c.pointwise_stabilizer(block_points);
  std::vector<int> first(static_cast<std::size_t>(n));
  std::iota(first.begin(), first.end(), 0);
  return {PermGroup(m, image_gens), restrict_to(k, first)};
}

std::string perm_key(const Perm& p) {
  std::string k(p.size(), '\0');
  for (std::size_t i = 0; i < p.size(); ++i) k[i] = static_cast<char>(p[i]);
  return k;
}

Perm key_perm(const std::string& k) {
  Perm p(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) p[i] = static_cast<unsigned char>(k[i]);
  return p;
}

// Representatives of the conjugacy classes of elements of prime order.
std::vector<Perm> prime_order_class_reps(const PermGroup& g) {
  std::unordered_set<std::string> remaining;
  g.for_each_element([&](const Perm& p) {
    long o = perm_order(p);
    if (is_prime_long(o)) remaining.insert(perm_key(p));
    return true;
  });
  std::vector<Perm> reps;
  std::vector<Perm> invs;
  for (const auto& s : g.generators()) invs.push_back(perm_inverse(s));
  while (!remaining.empty()) {
    std::string start = *remaining.begin();
    remaining.erase(remaining.begin());
    reps.push_back(key_perm(start));
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
      Perm x = key_perm(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i < invs.size(); ++i) {
        std::string c = perm_key(perm_mul(perm_mul(invs[i], x), g.generators()[i]));
        auto it = remaining.find(c);
        if (it != remaining.end()) {
          remaining.erase(it);
          queue.push_back(c);
        }
      }
    }
  }
  return reps;
}

CompositionFactor simple_factor(const PermGroup& p) {
  CompositionFactor f;
  f.order = p.order();
  const int d = p.degree();
  for (int n = 5; n <= 64; ++n) {
    mpz_class half = factorial(n) / 2;
    if (half > f.order) break;
    if (half == f.order && f.order != 20160) {
      f.min_degree = n;
      f.name = "A" + std::to_string(n);
      return f;
    }
  }
  if (f.order == 20160) {
    // A8 and PSL(3,4) share this order; A8 has elements of order 6 and 15.
    bool a8 = d < 21;
    std::mt19937_64 rng(20160);
    for (int t = 0; t < 2000 && !a8; ++t) {
      long o = perm_order(p.random_element(rng));
      if (o == 6 || o == 15) a8 = true;
    }
    f.min_degree = a8 ? 8 : 21;
    f.name = a8 ? "A8" : "PSL(3,4)";
    return f;
  }
  for (const auto& e : kSimpleGroups) {
    if (f.order == e.order) {
      f.min_degree = e.min_degree;
      f.name = e.name;
      return f;
    }
  }
  f.min_degree = d;
  f.name = "simple group of order " + f.order.get_str();
  return f;
}

bool in_simple_table(const mpz_class& order) {
  if (order == 20160) return true;
  for (const auto& e : kSimpleGroups)
    if (order == e.order) return true;
  return false;
}

PermGroup perfect_core(const PermGroup& g) {
  PermGroup p = g;
  while (!p.is_trivial()) {
    PermGroup d = derived_subgroup(p);
    if (d.order() == p.order()) break;
    p = d;
  }
  return p;
}

bool prime_power_degree(int n, int& prime) {
  for (int q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    int m = n;
    while (m % q == 0) m /= q;
    prime = q;
    return m == 1;
  }
  return false;
}

void nonabelian_factors(const PermGroup& g, std::size_t budget, std::vector<CompositionFactor>& out) {
  PermGroup p = perfect_core(g);
  if (p.is_trivial()) return;
  auto orbits = p.orbits();
  std::vector<std::vector<int>> moved;
  for (auto& o : orbits)
    if (o.size() > 1) moved.push_back(o);
  if (moved.size() == 1 && static_cast<int>(moved[0].size()) < p.degree()) {
    nonabelian_factors(restrict_to(p, moved[0]), budget, out);
    return;
  }
  if (moved.size() > 1) {
    nonabelian_factors(restrict_to(p, moved[0]), budget, out);
    nonabelian_factors(p.pointwise_stabilizer(moved[0]), budget, out);
    return;
  }
  const int n = p.degree();
  for (int a = 1; a < n; ++a) {
    auto blocks = minimal_block_system(p, a);
    if (blocks.size() > 1) {
      auto [image, kernel] = block_action(p, blocks);
      nonabelian_factors(image, budget, out);
      nonabelian_factors(kernel, budget, out);
      return;
    }
  }
  const mpz_class order = p.order();
  if (n >= 5 && order == factorial(n) / 2) {
    out.push_back(simple_factor(p));
    return;
  }
  auto split_regular = [&](const PermGroup& m) {
    // m is a regular normal subgroup, so p = m : p_0 and p/m is the point stabilizer.
    nonabelian_factors(m, budget, out);
    nonabelian_factors(p.stabilizer(0), budget, out);
  };
  if (order <= budget) {
    PermGroup best = p;
    for (const auto& rep : prime_order_class_reps(p)) {
      PermGroup m = normal_closure({rep}, p);
      if (m.order() < best.order()) best = m;
    }
    if (best.order() == order) {
      out.push_back(simple_factor(p));
      return;
    }
    if (best.order() == n && best.is_transitive()) {
      split_regular(best);
      return;
    }
    fail(ErrorCode::SearchBudgetExceeded,
         "primitive section of order " + order.get_str() + " has a non-regular minimal normal subgroup");
  }
  int prime = 0;
  if (prime_power_degree(n, prime)) {
    std::mt19937_64 rng(0xaff1e);
    for (int t = 0; t < 4000; ++t) {
      Perm x = p.random_element(rng);
      long o = perm_order(x);
      if (o % prime != 0) continue;
      Perm h = perm_pow(x, o / prime);
      if (perm_cycle_type(h).back() == 1) continue;  // has a fixed point
      PermGroup m = normal_closure({h}, p);
      if (m.order() == n && m.is_abelian()) {
        split_regular(m);
        return;
      }
    }
  }
  if (in_simple_table(order)) {
    out.push_back(simple_factor(p));
    return;
  }
  fail(ErrorCode::SearchBudgetExceeded,
       "primitive section of order " + order.get_str() + " exceeds the enumeration budget");
}

}  // namespace

std::vector<CompositionFactor> composition_factors(const PermGroup& g, std::size_t budget) {
  std::vector<CompositionFactor> simple;
  nonabelian_factors(g, budget, simple);
  mpz_class rest = g.order();
  for (const auto& f : simple) rest /= f.order;
  std::vector<CompositionFactor> out;
  if (rest > 1) {
    CompositionFactor a;
    a.abelian = true;
    a.order = rest;
    a.name = "abelian part";
    out.push_back(a);
  }
  std::sort(simple.begin(), simple.end(), [](const auto& a, const auto& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.min_degree < b.min_degree;
  });
  out.insert(out.end(), simple.begin(), simple.end());
  return out;
}

KSolvability is_k_solvable(const PermGroup& g, int k, std::size_t budget) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be positive");
  KSolvability r;
  if (g.degree() <= k) {
    CompositionFactor whole;
    whole.order = g.order();
    whole.min_degree = g.degree();
    whole.name = "whole group inside S_" + std::to_string(g.degree());
    r.value = true;
    r.witness.push_back(whole);
    r.reason = "degree " + std::to_string(g.degree()) + " <= k";
    return r;
  }
  r.witness = composition_factors(g, budget);
  r.value = true;
  for (const auto& f : r.witness) {
    if (!f.abelian && f.min_degree > k) {
      r.value = false;
      r.reason = f.name + " needs " + std::to_string(f.min_degree) + " points";
      return r;
    }
  }
  r.reason = "every quotient is abelian or embeds in S_" + std::to_string(k);
  return r;
}

// ---------------------------------------------------------------------------
// Pairs

GroupPair monodromy_pair(const PermGroup& g) {
  if (g.degree() == 0) return {g, g};
  return {g, g.stabilizer(0)};
}

AlmostNormal is_almost_normal(const GroupPair& pair) {
  const PermGroup& g = pair.group;
  const int n = g.degree();
  AlmostNormal r;
  if (n == 0 || pair.subgroup.is_trivial()) {
    r.value = true;
    r.conjugators.push_back(perm_identity(n));
    return r;
  }
  PermGroup stab = g.stabilizer(0);
  if (!pair.subgroup.is_subgroup_of(stab) || pair.subgroup.order() != stab.order())
    fail(ErrorCode::NotApplicable, "subgroup is not the stabilizer of the first point");
  // Conjugating by an element taking point 0 to q gives the stabilizer of q.
  std::vector<Perm> reach(static_cast<std::size_t>(n));
  reach[0] = perm_identity(n);
  std::vector<int> orbit{0};
  for (std::size_t k = 0; k < orbit.size(); ++k)
    for (const auto& s : g.generators()) {
      int q = s[static_cast<std::size_t>(orbit[k])];
      if (reach[static_cast<std::size_t>(q)].empty()) {
        reach[static_cast<std::size_t>(q)] = perm_mul(reach[static_cast<std::size_t>(orbit[k])], s);
        orbit.push_back(q);
      }
    }
  std::vector<int> chosen{0};
  r.conjugators.push_back(reach[0]);
  mpz_class current = stab.order();
  for (int q : orbit) {
    if (current == 1) break;
    if (q == 0) continue;
    std::vector<int> trial = chosen;
    trial.push_back(q);
    mpz_class o = g.pointwise_stabilizer(trial).order();
    if (o < current) {
      chosen = trial;
      current = o;
      r.conjugators.push_back(reach[static_cast<std::size_t>(q)]);
    }
  }
  r.value = current == 1;
  if (!r.value) r.conjugators.clear();
  return r;
}

// ---------------------------------------------------------------------------
// Primitive solvable groups with a full cycle

AffineClassification classify_primitive_solvable_with_cycle(const PermGroup& g) {
  const int n = g.degree();
  if (n < 1 || !g.is_transitive()) fail(ErrorCode::NotApplicable, "group is not transitive");
  if (!is_primitive(g)) fail(ErrorCode::NotApplicable, "group is not primitive");
  if (!is_solvable(g)) fail(ErrorCode::NotApplicable, "group is not solvable");
  FullCycleSearch fc = find_full_cycle(g);
  if (fc.status != FullCycleSearch::Status::Found)
    fail(ErrorCode::NotApplicable, "group has no full cycle");
  AffineClassification r;
  if (n == 4) {
    r.kind = AffineClassification::Kind::SizeFour;
    r.p = 4;
    return r;
  }
  if (!is_prime_long(n)) fail(ErrorCode::NotApplicable, "degree is neither 4 nor prime");
  r.kind = AffineClassification::Kind::Affine;
  r.p = n;
  // Label points along the cycle so that it acts as x -> x + 1.
  std::vector<int> label(static_cast<std::size_t>(n));
  int pt = 0;
  for (int i = 0; i < n; ++i) {
    label[static_cast<std::size_t>(pt)] = i;
    pt = fc.cycle[static_cast<std::size_t>(pt)];
  }
  auto affine_of = [&](const Perm& s, const std::vector<int>& lab) -> std::pair<int, int> {
    std::vector<int> point(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) point[static_cast<std::size_t>(lab[static_cast<std::size_t>(q)])] = q;
    int b = lab[static_cast<std::size_t>(s[static_cast<std::size_t>(point[0])])];
    int a = ((lab[static_cast<std::size_t>(s[static_cast<std::size_t>(point[1])])] - b) % n + n) % n;
    if (a == 0) fail(ErrorCode::NotApplicable, "generator is not affine under the cycle labeling");
    for (int x = 0; x < n; ++x)
      if (lab[static_cast<std::size_t>(s[static_cast<std::size_t>(point[static_cast<std::size_t>(x)])])] != (a * x + b) % n)
        fail(ErrorCode::NotApplicable, "generator is not affine under the cycle labeling");
    return {a, b};
  };
  // Shift the origin to a fixed point of the first non-translation, if any.
  for (const auto& s : g.generators()) {
    auto [a, b] = affine_of(s, label);
    if (a == 1) continue;
    // Fixed point c solves a*c + b = c, i.e. c = b / (1 - a) mod n.
    int inv = 1;
    int denom = ((1 - a) % n + n) % n;
    while ((inv * denom) % n != 1) ++inv;
    int c = (b * inv) % n;
    for (auto& l : label) l = ((l - c) % n + n) % n;
    break;
  }
  r.label = label;
  for (const auto& s : g.generators()) r.maps.push_back(affine_of(s, label));
  return r;
}

PermGroup restrict_group(const PermGroup& g, const std::vector<int>& points) {
  for (int v : points)
    if (v < 0 || v >= g.degree()) fail(ErrorCode::InvalidArgument, "point out of range");
  return restrict_to(g, points);
}

}  // namespace finitude
