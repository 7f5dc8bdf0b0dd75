#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nilbench {

inline constexpr std::uint32_t kNoState = 0xFFFFFFFFu;

// Signed letters: +(a+1) for letter a, -(a+1) for its inverse.
using Word = std::vector<int>;

Word parse_word(std::string_view text);  // a..z, capitals are inverses
std::string format_word(const Word& w);
Word free_reduce(const Word& w);
Word inverse_word(const Word& w);

// Deterministic and co-deterministic automaton over A and its formal inverses.
class InverseAutomaton {
public:
  InverseAutomaton() = default;
  InverseAutomaton(std::size_t states, std::size_t letters);

  std::size_t size() const { return states_; }
  std::size_t letters() const { return letters_; }
  std::uint32_t base() const { return base_; }
  void set_base(std::uint32_t b) { base_ = b; }

  std::uint32_t out(std::uint32_t v, std::size_t a) const { return out_[v * letters_ + a]; }
  std::uint32_t in(std::uint32_t v, std::size_t a) const { return in_[v * letters_ + a]; }
  // Signed letter step; kNoState if undefined.
  std::uint32_t step(std::uint32_t v, int letter) const;
  std::uint32_t read(std::uint32_t v, const Word& w) const;
  bool accepts(const Word& w) const;

  // Throws NotInverse on a determinism conflict.
  void add_edge(std::uint32_t p, std::size_t a, std::uint32_t q);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(std::size_t a) const;
  std::size_t edge_count() const;
  std::size_t degree(std::uint32_t v) const;

  bool operator==(const InverseAutomaton& o) const = default;

private:
  std::size_t states_ = 0;
  std::size_t letters_ = 0;
  std::uint32_t base_ = 0;
  std::vector<std::uint32_t> out_, in_;
};

struct Edge {
  std::uint32_t from;
  std::size_t letter;
  std::uint32_t to;
};

struct FoldResult {
  InverseAutomaton automaton;
  std::vector<std::uint32_t> image;  // input vertex -> state
};

// Folds an arbitrary labelled graph; `merge` lists vertex pairs identified up front.
FoldResult fold_graph(std::size_t vertices, std::size_t letters, const std::vector<Edge>& edges,
                      std::uint32_t base, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& merge = {});

// Flower automaton of the basis, folded and trimmed.
InverseAutomaton fold(const std::vector<Word>& basis, std::size_t letters);

// Removes non-base vertices of degree <= 1 until none remain, and unreachable vertices.
FoldResult trim(const InverseAutomaton& a);

// Breadth-first renumbering from the base in letter order a, a^-1, b, b^-1, ...
FoldResult canonical(const InverseAutomaton& a);
bool isomorphic(const InverseAutomaton& x, const InverseAutomaton& y);

struct SpanningTree {
  std::vector<Word> paths;                           // u_v
  std::vector<std::uint32_t> order;                  // breadth-first order
  std::vector<std::pair<std::uint32_t, int>> parent;  // (parent, signed letter read from it)
  bool is_tree_edge(std::uint32_t p, std::size_t a, std::uint32_t q) const;
};
SpanningTree spanning_tree(const InverseAutomaton& a);

// One word u_p a u_q^-1 per positive edge outside the breadth-first spanning tree.
std::vector<Word> tree_basis(const InverseAutomaton& a);

enum class Family { A, B, C };
InverseAutomaton build_family(Family kind, std::size_t l);

// "base N" line then "src letter dst" lines, letters as a..z when possible.
std::string dump(const InverseAutomaton& a);

}  // namespace nilbench
