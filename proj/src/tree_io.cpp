#include "mcplan/tree_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "mcplan/error.hpp"

namespace mcplan {
namespace {

constexpr std::string_view kHeader = "# mcplan-tree v1 value_mode=";

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

struct RawNode {
  long parent = -1;
  long action = -1;
  std::uint64_t visits = 0;
  double total_reward = 0.0;
  bool terminal = false;
  std::string key;
};

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw PlanningError(ErrorKind::Parse,
                      "tree line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string_view to_string(ValueMode mode) noexcept {
  return mode == ValueMode::Max ? "max" : "average";
}

ValueMode parse_value_mode(std::string_view text) {
  if (text == "average") return ValueMode::Average;
  if (text == "max") return ValueMode::Max;
  throw PlanningError(ErrorKind::Config,
                      "unknown value mode '" + std::string(text) + "'");
}

std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::string from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) {
    throw PlanningError(ErrorKind::Parse, "odd-length hex string");
  }
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw PlanningError(ErrorKind::Parse, "invalid hex digit");
    }
    out.push_back(static_cast<char>((hi << 4) | lo));
  }
  return out;
}

void write_tree(std::ostream& out, const SearchTree& tree) {
  out << kHeader << to_string(tree.value_mode()) << '\n';
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const NodeRecord& n = tree.node(tree.id_at(i));
    out << i << ' ';
    if (n.parent) out << n.parent->index; else out << '-';
    out << ' ';
    if (n.action) out << n.action->index; else out << '-';
    out << ' ' << n.visits << ' ' << format_real(n.total_reward) << ' '
        << (n.terminal ? 1 : 0) << ' '
        << (n.state_key.empty() ? std::string("-") : to_hex(n.state_key))
        << '\n';
  }
}

std::string serialize_tree(const SearchTree& tree) {
  std::ostringstream out;
  write_tree(out, tree);
  return out.str();
}

SearchTree read_tree(std::istream& in) {
  ValueMode mode = ValueMode::Average;
  std::vector<RawNode> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.rfind(kHeader, 0) == 0) {
        mode = parse_value_mode(std::string_view(line).substr(kHeader.size()));
      }
      continue;
    }
    std::istringstream fields(line);
    std::string id, parent, action, visits, reward, terminal, key;
    if (!(fields >> id >> parent >> action >> visits >> reward >> terminal >>
          key)) {
      parse_fail(line_no, "expected 7 fields");
    }
    try {
      if (std::stoul(id) != raw.size()) parse_fail(line_no, "ids must be dense");
      RawNode n;
      n.parent = parent == "-" ? -1 : std::stol(parent);
      n.action = action == "-" ? -1 : std::stol(action);
      n.visits = std::stoull(visits);
      n.total_reward = std::stod(reward);
      n.terminal = terminal == "1";
      n.key = key == "-" ? std::string() : from_hex(key);
      if ((n.parent < 0) != raw.empty()) {
        parse_fail(line_no, "only the first node may lack a parent");
      }
      if (n.parent >= static_cast<long>(raw.size())) {
        parse_fail(line_no, "parent must precede child");
      }
      if (n.parent >= 0 && n.action < 0) parse_fail(line_no, "missing action");
      raw.push_back(std::move(n));
    } catch (const std::logic_error&) {
      parse_fail(line_no, "malformed number");
    }
  }
  if (raw.empty()) throw PlanningError(ErrorKind::Parse, "tree has no nodes");

  std::vector<std::vector<ActionId>> child_actions(raw.size());
  for (std::size_t i = 1; i < raw.size(); ++i) {
    child_actions[raw[i].parent].push_back(
        ActionId{static_cast<std::uint32_t>(raw[i].action)});
  }
  SearchTree tree(raw[0].key, child_actions[0], raw[0].terminal, mode);
  for (std::size_t i = 1; i < raw.size(); ++i) {
    tree.add_child(tree.id_at(raw[i].parent),
                   ActionId{static_cast<std::uint32_t>(raw[i].action)},
                   raw[i].key, raw[i].terminal, child_actions[i]);
  }
  for (std::size_t i = raw.size(); i-- > 0;) {
    tree.set_statistics(tree.id_at(i), raw[i].visits, raw[i].total_reward);
  }
  return tree;
}

SearchTree parse_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_tree(in);
}

SearchTree load_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PlanningError(ErrorKind::Io, "cannot open tree file " + path);
  return read_tree(in);
}

}  // namespace mcplan
