#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace toda {

enum class AlgebraType { A, B, C, D };

char algebra_type_letter(AlgebraType t);
AlgebraType algebra_type_from_letter(char c);

// Finite reduced root system stored in simple-root coordinates.
//
// Positive roots come first, sorted by (height, lexicographic coordinates);
// the negative of roots[k] sits at roots[k + n_positive]. cartan(i, j) holds
// the integer pairing <alpha_j, alpha_i^vee>, so the reflection s_i acts on a
// coordinate vector c by subtracting (cartan.row(i) . c) from slot i. gram is
// a Weyl-invariant inner product with long roots normalized to norm 2.
struct RootSystem {
  AlgebraType type = AlgebraType::A;
  int rank = 0;
  Eigen::MatrixXi cartan;
  Eigen::MatrixXd gram;
  std::vector<Eigen::VectorXi> roots;
  int n_positive = 0;

  int root_count() const { return static_cast<int>(roots.size()); }
  bool is_positive(int idx) const { return idx < n_positive; }
  int negate(int idx) const {
    return idx < n_positive ? idx + n_positive : idx - n_positive;
  }
  int root_index(const Eigen::VectorXi& coords) const;
  int simple_root_index(int i) const;

  double norm2(int idx) const;
  // <roots[beta], roots[alpha]^vee>, always an exact small integer.
  int pairing(int beta, int alpha) const;
  // Coordinates of roots[idx]^vee in the simple-coroot basis.
  Eigen::VectorXi coroot_coords(int idx) const;
  // Human-readable name, e.g. "a1+a2" or "-a1-2a2"; used in error messages.
  std::string root_name(int idx) const;

 private:
  std::map<std::vector<int>, int> index_;
  friend RootSystem build_root_system(AlgebraType, int);
};

// Supported: type A rank 1..4 and type B rank 2. C and D are declared for
// the enum surface but rejected here.
RootSystem build_root_system(AlgebraType type, int rank);

struct WeylElement {
  int id = 0;
  std::vector<int> word;  // lexicographically smallest reduced word, 0-based
  int length = 0;
  // root_action[k] = index of w(roots[k]); a permutation commuting with
  // negation. Products compose actions: (a*b)(r) = a(b(r)).
  std::vector<int> root_action;
  // Column i = coordinates of w(alpha_i^vee) in the simple-coroot basis.
  Eigen::MatrixXi coweight_action;
};

// Full Weyl group with multiplication tables. Element ids are canonical:
// sorted by (length, word), so the identity is id 0 and the longest element
// is last, independent of enumeration order.
struct WeylGroup {
  RootSystem rs;
  std::vector<WeylElement> elements;
  int identity_id = 0;
  int longest_id = 0;
  std::vector<int> reflection_by_root;  // positive root idx -> element id

  int size() const { return static_cast<int>(elements.size()); }
  int mul(int a, int b) const { return mul_table_[a * size() + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int apply(int elem, int root_idx) const {
    return elements[elem].root_action[root_idx];
  }
  bool is_reflection(int elem) const;
  // Positive root index of a reflection element, -1 otherwise.
  int reflection_root(int elem) const;

  std::vector<int> mul_table_;
  std::vector<int> inverse_;
};

WeylGroup enumerate_weyl(const RootSystem& rs);

// One reflection per positive root, in positive-root order.
std::vector<int> all_reflections(const WeylGroup& wg);

enum class OrderKind { Strong, WeakLeft, WeakRight };

std::string order_kind_name(OrderKind k);
OrderKind order_kind_from_name(const std::string& name);

// Bruhat order of the requested kind as an explicit cover DAG plus its
// reflexive-transitive closure. Covers are (lower, upper) pairs with
// length difference one, sorted; the closure is bitset-backed.
struct BruhatPoset {
  OrderKind kind = OrderKind::Strong;
  int n = 0;
  std::vector<std::pair<int, int>> covers;

  bool leq(int a, int b) const {
    return (up_[a][static_cast<size_t>(b) / 64] >> (b % 64)) & 1u;
  }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  // All ordered pairs (a, b) with a < b strictly, sorted.
  std::vector<std::pair<int, int>> strict_pairs() const;

  std::vector<std::vector<uint64_t>> up_;
};

BruhatPoset bruhat_poset(const WeylGroup& wg, OrderKind kind);

}  // namespace toda
