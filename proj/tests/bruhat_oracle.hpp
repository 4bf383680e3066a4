// Brute-force strong Bruhat order built from a Cartan matrix alone, for
// cross-checking the library's reflection-cover construction against the
// subword property. Deliberately shares no code with the library: elements
// are integer matrices acting on simple-root coordinates, enumerated by
// breadth-first search, and v <= w is decided by trying every subword of a
// reduced word of w.
#pragma once

#include <Eigen/Core>

#include <map>
#include <vector>

namespace bruhat_oracle {

struct Group {
  std::vector<Eigen::MatrixXi> gens;
  std::vector<Eigen::MatrixXi> mats;
  std::vector<std::vector<int>> words;  // BFS-shortest, hence reduced
  std::map<std::vector<int>, int> index;

  int id_of(const Eigen::MatrixXi& m) const {
    return index.at(key(m));
  }

  static std::vector<int> key(const Eigen::MatrixXi& m) {
    std::vector<int> k;
    k.reserve(m.size());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
    return k;
  }
};

inline Group enumerate(const Eigen::MatrixXi& cartan) {
  const int r = static_cast<int>(cartan.rows());
  Group g;
  g.gens.resize(r);
  for (int i = 0; i < r; ++i) {
    // s_i on coordinate vectors: subtracts <., alpha_i^vee> from slot i.
    Eigen::MatrixXi s = Eigen::MatrixXi::Identity(r, r);
    for (int j = 0; j < r; ++j) s(i, j) -= cartan(i, j);
    g.gens[i] = s;
  }
  Eigen::MatrixXi e = Eigen::MatrixXi::Identity(r, r);
  g.mats.push_back(e);
  g.words.push_back({});
  g.index[Group::key(e)] = 0;
  for (size_t q = 0; q < g.mats.size(); ++q) {
    Eigen::MatrixXi cur = g.mats[q];  // copy: push_back may reallocate
    for (int i = 0; i < r; ++i) {
      Eigen::MatrixXi nxt = cur * g.gens[i];
      auto k = Group::key(nxt);
      if (g.index.count(k)) continue;
      g.index[k] = static_cast<int>(g.mats.size());
      g.mats.push_back(nxt);
      std::vector<int> w = g.words[q];
      w.push_back(i);
      g.words.push_back(std::move(w));
    }
  }
  return g;
}

// Subword property: v <= w iff some subword of a reduced word of w
// multiplies to v.
inline bool leq(const Group& g, int v, int w) {
  const std::vector<int>& word = g.words[w];
  const int L = static_cast<int>(word.size());
  const int r = static_cast<int>(g.gens[0].rows());
  const auto target = Group::key(g.mats[v]);
  for (int mask = 0; mask < (1 << L); ++mask) {
    Eigen::MatrixXi m = Eigen::MatrixXi::Identity(r, r);
    for (int p = 0; p < L; ++p)
      if (mask & (1 << p)) m = m * g.gens[word[p]];
    if (Group::key(m) == target) return true;
  }
  return false;
}

}  // namespace bruhat_oracle
