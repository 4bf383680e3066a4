#include "rootsys.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace toda {

char algebra_type_letter(AlgebraType t) {
  switch (t) {
    case AlgebraType::A: return 'A';
    case AlgebraType::B: return 'B';
    case AlgebraType::C: return 'C';
    case AlgebraType::D: return 'D';
  }
  return '?';
}

AlgebraType algebra_type_from_letter(char c) {
  switch (c) {
    case 'A': case 'a': return AlgebraType::A;
    case 'B': case 'b': return AlgebraType::B;
    case 'C': case 'c': return AlgebraType::C;
    case 'D': case 'd': return AlgebraType::D;
  }
  throw ConfigError(std::string("unknown algebra type '") + c + "'");
}

namespace {

std::vector<int> to_key(const Eigen::VectorXi& v) {
  return std::vector<int>(v.data(), v.data() + v.size());
}

// s_i acting on simple-root coordinates.
Eigen::VectorXi simple_reflect(const Eigen::MatrixXi& cartan, int i,
                               const Eigen::VectorXi& c) {
  Eigen::VectorXi out = c;
  int p = 0;
  for (int j = 0; j < c.size(); ++j) p += cartan(i, j) * c(j);
  out(i) -= p;
  return out;
}

int height(const Eigen::VectorXi& c) { return c.sum(); }

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

}  // namespace

int RootSystem::root_index(const Eigen::VectorXi& coords) const {
  auto it = index_.find(to_key(coords));
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::simple_root_index(int i) const {
  Eigen::VectorXi c = Eigen::VectorXi::Zero(rank);
  c(i) = 1;
  int idx = root_index(c);
  if (idx < 0) throw InvariantError("simple root missing from root list");
  return idx;
}

double RootSystem::norm2(int idx) const {
  const Eigen::VectorXd c = roots[idx].cast<double>();
  return c.dot(gram * c);
}

int RootSystem::pairing(int beta, int alpha) const {
  const Eigen::VectorXd cb = roots[beta].cast<double>();
  const Eigen::VectorXd ca = roots[alpha].cast<double>();
  double v = 2.0 * cb.dot(gram * ca) / ca.dot(gram * ca);
  int r = static_cast<int>(std::lround(v));
  if (std::abs(v - r) > 1e-9)
    throw InvariantError("non-integral root pairing");
  return r;
}

Eigen::VectorXi RootSystem::coroot_coords(int idx) const {
  // beta^vee = sum_j c_j (alpha_j, alpha_j)/(beta, beta) alpha_j^vee
  double nb = norm2(idx);
  Eigen::VectorXi out(rank);
  for (int j = 0; j < rank; ++j) {
    double v = roots[idx](j) * gram(j, j) / nb;
    int r = static_cast<int>(std::lround(v));
    if (std::abs(v - r) > 1e-9)
      throw InvariantError("non-integral coroot coordinate");
    out(j) = r;
  }
  return out;
}

std::string RootSystem::root_name(int idx) const {
  const Eigen::VectorXi& c = roots[idx];
  std::string s;
  for (int j = 0; j < rank; ++j) {
    if (c(j) == 0) continue;
    if (!s.empty() && c(j) > 0) s += "+";
    if (c(j) == -1) s += "-";
    else if (c(j) != 1) s += std::to_string(c(j));
    s += "a" + std::to_string(j + 1);
  }
  return s.empty() ? "0" : s;
}

RootSystem build_root_system(AlgebraType type, int rank) {
  RootSystem rs;
  rs.type = type;
  rs.rank = rank;

  if (type == AlgebraType::A) {
    if (rank < 1 || rank > 4)
      throw ConfigError("type A supports rank 1..4, got rank " +
                        std::to_string(rank));
    rs.cartan = Eigen::MatrixXi::Zero(rank, rank);
    for (int i = 0; i < rank; ++i) {
      rs.cartan(i, i) = 2;
      if (i + 1 < rank) {
        rs.cartan(i, i + 1) = -1;
        rs.cartan(i + 1, i) = -1;
      }
    }
    rs.gram = rs.cartan.cast<double>();  // simply laced: gram = Cartan
  } else if (type == AlgebraType::B) {
    if (rank != 2)
      throw ConfigError("type B supports rank 2 only, got rank " +
                        std::to_string(rank));
    rs.cartan = Eigen::MatrixXi(2, 2);
    // alpha_1 long, alpha_2 short; cartan(i,j) = <alpha_j, alpha_i^vee>.
    rs.cartan << 2, -1,
                -2, 2;
    rs.gram = Eigen::MatrixXd(2, 2);
    rs.gram << 2, -1,
              -1, 1;
  } else {
    throw ConfigError(std::string("algebra type ") + algebra_type_letter(type) +
                      " is not supported");
  }

  // Close the simple roots under all simple reflections.
  std::set<std::vector<int>> seen;
  std::vector<Eigen::VectorXi> queue;
  for (int i = 0; i < rank; ++i) {
    Eigen::VectorXi c = Eigen::VectorXi::Zero(rank);
    c(i) = 1;
    if (seen.insert(to_key(c)).second) queue.push_back(c);
  }
  for (size_t q = 0; q < queue.size(); ++q) {
    Eigen::VectorXi cur = queue[q];
    for (int i = 0; i < rank; ++i) {
      Eigen::VectorXi img = simple_reflect(rs.cartan, i, cur);
      if (seen.insert(to_key(img)).second) queue.push_back(img);
    }
  }

  std::vector<Eigen::VectorXi> pos, neg;
  for (const auto& c : queue) {
    bool nonneg = true, nonpos = true;
    for (int j = 0; j < rank; ++j) {
      if (c(j) < 0) nonneg = false;
      if (c(j) > 0) nonpos = false;
    }
    if (nonneg && !nonpos) pos.push_back(c);
    else if (nonpos && !nonneg) neg.push_back(c);
    else throw InvariantError("root with mixed-sign coordinates");
  }
  if (pos.size() != neg.size())
    throw InvariantError("positive/negative root count mismatch");

  std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return lex_less(a, b);
  });

  rs.n_positive = static_cast<int>(pos.size());
  rs.roots = pos;
  for (const auto& c : pos) rs.roots.push_back(-c);
  for (int k = 0; k < rs.root_count(); ++k)
    rs.index_[to_key(rs.roots[k])] = k;
  return rs;
}

namespace {

using Action = std::vector<int>;

Action compose(const Action& a, const Action& b) {
  Action out(b.size());
  for (size_t k = 0; k < b.size(); ++k) out[k] = a[b[k]];
  return out;
}

int inversions(const RootSystem& rs, const Action& a) {
  int n = 0;
  for (int k = 0; k < rs.n_positive; ++k)
    if (!rs.is_positive(a[k])) ++n;
  return n;
}

}  // namespace

bool WeylGroup::is_reflection(int elem) const {
  return reflection_root(elem) >= 0;
}

int WeylGroup::reflection_root(int elem) const {
  for (int k = 0; k < rs.n_positive; ++k)
    if (reflection_by_root[k] == elem) return k;
  return -1;
}

WeylGroup enumerate_weyl(const RootSystem& rs) {
  WeylGroup wg;
  wg.rs = rs;
  const int nroots = rs.root_count();

  // Simple-reflection actions.
  std::vector<Action> gens(rs.rank);
  for (int i = 0; i < rs.rank; ++i) {
    gens[i].resize(nroots);
    for (int k = 0; k < nroots; ++k) {
      int img = rs.root_index(simple_reflect(rs.cartan, i, rs.roots[k]));
      if (img < 0) throw InvariantError("reflection left the root system");
      gens[i][k] = img;
    }
  }

  // BFS over right multiplication; layer = length.
  Action ident(nroots);
  std::iota(ident.begin(), ident.end(), 0);
  std::map<Action, int> ids;
  std::vector<Action> actions{ident};
  ids[ident] = 0;
  for (size_t q = 0; q < actions.size(); ++q) {
    Action cur = actions[q];
    for (int i = 0; i < rs.rank; ++i) {
      Action nxt = compose(cur, gens[i]);
      if (ids.emplace(nxt, static_cast<int>(actions.size())).second)
        actions.push_back(nxt);
    }
  }

  const int n = static_cast<int>(actions.size());

  // Lexicographically smallest reduced word by greedy left descent:
  // pick the smallest i with l(s_i w) < l(w), i.e. w^-1(alpha_i) < 0.
  auto canonical_word = [&](const Action& a0) {
    std::vector<int> word;
    Action a = a0;
    int len = inversions(rs, a);
    while (len > 0) {
      int pick = -1;
      for (int i = 0; i < rs.rank && pick < 0; ++i) {
        // w^-1(alpha_i) < 0  <=>  alpha_i is an inversion of w^-1
        // <=> exists k positive with a[k] = negate(simple_i)... cheaper:
        // l(s_i w) < l(w) iff w^-1 alpha_i < 0 iff alpha_i in w(Phi-),
        // i.e. the preimage of simple root i under a is negative.
        int si = rs.simple_root_index(i);
        for (int k = 0; k < nroots; ++k) {
          if (a[k] == si) {
            if (!rs.is_positive(k)) pick = i;
            break;
          }
        }
      }
      if (pick < 0) throw InvariantError("no descent on a non-identity element");
      word.push_back(pick);
      a = compose(gens[pick], a);
      --len;
    }
    return word;
  };

  struct Entry {
    int length;
    std::vector<int> word;
    Action action;
  };
  std::vector<Entry> entries(n);
  for (int id = 0; id < n; ++id) {
    entries[id].action = actions[id];
    entries[id].length = inversions(rs, actions[id]);
    entries[id].word = canonical_word(actions[id]);
    if (static_cast<int>(entries[id].word.size()) != entries[id].length)
      throw InvariantError("reduced word length != inversion count");
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.word < b.word;
  });

  std::map<Action, int> canon_id;
  wg.elements.resize(n);
  for (int id = 0; id < n; ++id) {
    WeylElement& e = wg.elements[id];
    e.id = id;
    e.word = entries[id].word;
    e.length = entries[id].length;
    e.root_action = entries[id].action;
    canon_id[e.root_action] = id;
  }
  wg.identity_id = 0;
  wg.longest_id = n - 1;
  if (wg.elements[0].length != 0 ||
      wg.elements[n - 1].length != rs.n_positive ||
      (n > 1 && wg.elements[n - 2].length == rs.n_positive))
    throw InvariantError("length extremes are not unique");

  wg.mul_table_.resize(static_cast<size_t>(n) * n);
  wg.inverse_.resize(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      auto it = canon_id.find(
          compose(wg.elements[a].root_action, wg.elements[b].root_action));
      if (it == canon_id.end()) throw InvariantError("product left the group");
      wg.mul_table_[static_cast<size_t>(a) * n + b] = it->second;
      if (it->second == 0) wg.inverse_[a] = b;
    }
  }

  // Coweight action: column i = coords of w(alpha_i^vee) = (w alpha_i)^vee.
  for (int id = 0; id < n; ++id) {
    WeylElement& e = wg.elements[id];
    e.coweight_action.resize(rs.rank, rs.rank);
    for (int i = 0; i < rs.rank; ++i)
      e.coweight_action.col(i) =
          rs.coroot_coords(e.root_action[rs.simple_root_index(i)]);
  }

  // Reflections, one per positive root: s_a(b) = b - <b, a^vee> a.
  wg.reflection_by_root.assign(rs.n_positive, -1);
  for (int a = 0; a < rs.n_positive; ++a) {
    Action act(nroots);
    for (int k = 0; k < nroots; ++k) {
      Eigen::VectorXi img =
          rs.roots[k] - rs.pairing(k, a) * rs.roots[a];
      int idx = rs.root_index(img);
      if (idx < 0) throw InvariantError("reflection image is not a root");
      act[k] = idx;
    }
    auto it = canon_id.find(act);
    if (it == canon_id.end())
      throw InvariantError("reflection is not a group element");
    wg.reflection_by_root[a] = it->second;
  }

  return wg;
}

std::vector<int> all_reflections(const WeylGroup& wg) {
  return wg.reflection_by_root;
}

std::string order_kind_name(OrderKind k) {
  switch (k) {
    case OrderKind::Strong: return "strong";
    case OrderKind::WeakLeft: return "weak-left";
    case OrderKind::WeakRight: return "weak-right";
  }
  return "?";
}

OrderKind order_kind_from_name(const std::string& name) {
  if (name == "strong") return OrderKind::Strong;
  if (name == "weak-left") return OrderKind::WeakLeft;
  if (name == "weak-right") return OrderKind::WeakRight;
  throw ConfigError("unknown order kind '" + name +
                    "' (expected strong, weak-left or weak-right)");
}

std::vector<std::pair<int, int>> BruhatPoset::strict_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && leq(a, b)) out.emplace_back(a, b);
  return out;
}

BruhatPoset bruhat_poset(const WeylGroup& wg, OrderKind kind) {
  BruhatPoset p;
  p.kind = kind;
  p.n = wg.size();

  std::vector<int> multipliers;
  if (kind == OrderKind::Strong) {
    multipliers = all_reflections(wg);
  } else {
    for (int i = 0; i < wg.rs.rank; ++i)
      multipliers.push_back(
          wg.reflection_by_root[wg.rs.simple_root_index(i)]);
  }

  for (int w = 0; w < p.n; ++w) {
    for (int t : multipliers) {
      int u = (kind == OrderKind::WeakRight) ? wg.mul(w, t) : wg.mul(t, w);
      if (wg.elements[u].length == wg.elements[w].length + 1)
        p.covers.emplace_back(w, u);
    }
  }
  std::sort(p.covers.begin(), p.covers.end());
  p.covers.erase(std::unique(p.covers.begin(), p.covers.end()),
                 p.covers.end());

  // Upward closure, processed by decreasing length.
  const size_t words = (static_cast<size_t>(p.n) + 63) / 64;
  p.up_.assign(p.n, std::vector<uint64_t>(words, 0));
  std::vector<int> order(p.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return wg.elements[a].length > wg.elements[b].length;
  });
  std::vector<std::vector<int>> up_covers(p.n);
  for (auto& [lo, hi] : p.covers) up_covers[lo].push_back(hi);
  for (int w : order) {
    p.up_[w][static_cast<size_t>(w) / 64] |= uint64_t(1) << (w % 64);
    for (int hi : up_covers[w])
      for (size_t i = 0; i < words; ++i) p.up_[w][i] |= p.up_[hi][i];
  }

  // Both ends of every kind are the identity and the longest element.
  for (int w = 0; w < p.n; ++w) {
    if (!p.leq(wg.identity_id, w) || !p.leq(w, wg.longest_id))
      throw InvariantError("order lost its minimum or maximum");
  }
  return p;
}

}  // namespace toda
