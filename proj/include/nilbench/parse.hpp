#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nilbench/automaton.hpp"
#include "nilbench/nilpotency.hpp"
#include "nilbench/semigroup.hpp"

namespace nilbench {

struct ParsedInput {
  enum class Kind { Generators, Gallery, Rees };
  Kind kind = Kind::Generators;
  std::size_t points = 0;
  std::vector<NamedMap> generators;
  bool adjoin_identity = false;
  std::string gallery_id;
  std::vector<std::string> gallery_params;
  ReesDesc rees;
  std::string group_name;  // rees block group, e.g. "C 2"
};

// '//' starts a comment. Throws ParseError (with line and column) or SemanticError.
ParsedInput parse_input(std::string_view text);
ParsedInput parse_file(const std::string& path);

// Generating maps of a Generators or Gallery input; throws BadParameter for a rees block.
std::vector<NamedMap> input_generators(const ParsedInput& in);

// Group for a rees block: "trivial", "C n", "D n", "Q8", "S3".
GroupTable named_group(const std::string& spec);

// Semigroup file text for a generating set.
std::string format_input(const std::vector<NamedMap>& gens);

// One word per line over a..z, capitals for inverses; '//' comments.
std::vector<Word> parse_basis(std::string_view text, std::size_t* letters = nullptr);

}  // namespace nilbench
