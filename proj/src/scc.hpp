#pragma once

#include <cstdint>
#include <vector>

namespace nilbench::detail {

// Iterative Tarjan. succ(v, out) appends successors of v. Returns component id per vertex.
template <class Succ>
std::vector<std::uint32_t> strongly_connected(std::size_t n, Succ succ, std::size_t* count = nullptr) {
  constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<std::uint32_t> stack;
  std::vector<bool> on_stack(n, false);
  struct Frame {
    std::uint32_t v;
    std::vector<std::uint32_t> next;
    std::size_t pos;
  };
  std::vector<Frame> frames;
  std::uint32_t counter = 0, ncomp = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    frames.push_back({root, {}, 0});
    succ(root, frames.back().next);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.pos < f.next.size()) {
        std::uint32_t w = f.next[f.pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, {}, 0});
          succ(w, frames.back().next);
        } else if (on_stack[w]) {
          if (index[w] < low[f.v]) low[f.v] = index[w];
        }
        continue;
      }
      std::uint32_t v = f.v;
      if (low[v] == index[v]) {
        for (;;) {
          std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
      frames.pop_back();
      if (!frames.empty()) {
        std::uint32_t u = frames.back().v;
        if (low[v] < low[u]) low[u] = low[v];
      }
    }
  }
  if (count) *count = ncomp;
  return comp;
}

// Renumbers component ids by least member.
inline std::vector<std::uint32_t> renumber_by_first(const std::vector<std::uint32_t>& comp, std::size_t* count) {
  std::vector<std::uint32_t> map(comp.size(), 0xFFFFFFFFu), out(comp.size());
  std::uint32_t next = 0;
  for (std::size_t v = 0; v < comp.size(); ++v) {
    if (map[comp[v]] == 0xFFFFFFFFu) map[comp[v]] = next++;
    out[v] = map[comp[v]];
  }
  if (count) *count = next;
  return out;
}

}  // namespace nilbench::detail
