#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "mcplan/search_tree.hpp"

namespace mcplan {

// Line format, one node per line in id order:
//   id parent action visits total_reward terminal state_key_hex
// `parent` and `action` are "-" for the root, an empty key is written as "-".
// A leading "# mcplan-tree v1 value_mode=<average|max>" header carries the
// tree's value mode.

void write_tree(std::ostream& out, const SearchTree& tree);
std::string serialize_tree(const SearchTree& tree);

SearchTree read_tree(std::istream& in);
SearchTree parse_tree(std::string_view text);
SearchTree load_tree_file(const std::string& path);

std::string to_hex(std::string_view bytes);
std::string from_hex(std::string_view hex);

std::string_view to_string(ValueMode mode) noexcept;
ValueMode parse_value_mode(std::string_view text);

}  // namespace mcplan
