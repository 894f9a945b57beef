#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcpgap/gap.hpp"
#include "pcpgap/pcpvec.hpp"

namespace pcpgap::gadget_regex {

// Star-free expression over '|' and concatenation, stored in an arena.
// Children are always created before their parent, so ids increase towards
// the root and each node has exactly one parent.
class RegexAst {
 public:
  enum class Kind : std::uint8_t { literal, alternation, concatenation };
  using NodeId = std::uint32_t;

  NodeId literal(std::uint32_t symbol);
  // A single child is returned as is; nested nodes keep their structure.
  NodeId alternation(std::vector<NodeId> children);
  NodeId concatenation(std::vector<NodeId> children);
  void set_root(NodeId id);

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const;
  Kind kind(NodeId id) const { return nodes_.at(id).kind; }
  std::uint32_t symbol(NodeId id) const { return nodes_.at(id).symbol; }
  std::span<const NodeId> children(NodeId id) const;

  // Length shared by every string of the language. Throws ValidationError
  // when alternation branches disagree.
  std::size_t language_length() const;
  // Arena shape (tree, child ids below parent, arities) and length uniformity.
  void validate() const;

  friend bool operator==(const RegexAst& a, const RegexAst& b);

 private:
  struct Node {
    Kind kind;
    std::uint32_t symbol = 0;
    std::uint32_t first = 0;  // into children_
    std::uint32_t count = 0;
  };
  NodeId push(Kind kind, std::vector<NodeId> children);

  std::vector<Node> nodes_;
  std::vector<NodeId> children_;
  NodeId root_ = 0;
};

// Grammar: literal '#' decimal; '|' separates alternatives; juxtaposition
// concatenates and binds tighter; parentheses group.
std::string serialize(const RegexAst& ast);
RegexAst parse(std::string_view text);

struct RegexBuild {
  RegexAst ast;
  std::vector<std::size_t> branches;  // surviving A indices, in order
};

// Or over a of Concat over rows of Or over accepted symbols. Bottom entries
// are dropped; a branch with an empty row disappears. Throws
// ValidationError when no branch survives.
RegexBuild build_regex(const pcpvec::PcpVectorsInstance& pv);

// Exact min over the language of the Hamming distance to y.
std::size_t min_hamming(const RegexAst& ast, std::span<const std::uint32_t> y);

struct BinaryCodeInfo {
  std::size_t d_code = 0;
  double delta = 0;
  std::size_t min_distance = 0;
  friend bool operator==(const BinaryCodeInfo&, const BinaryCodeInfo&) = default;
};

struct RegexInstance {
  RegexAst expr;
  std::vector<std::vector<std::uint32_t>> strings;
  std::uint64_t alphabet_size = 0;
  std::size_t length = 0;
  std::vector<std::size_t> branches;  // A index of each outer branch (empty when unknown)
  bool binary = false;
  BinaryCodeInfo code;  // set when binary
  SourceInfo source;
  ExpectedGap gap;

  void validate() const;
};

// Strings y(b)[l] = b_l for every b. Minimisation: 0 when satisfiable,
// at least L(1 - s*) otherwise.
RegexInstance build_regex_instance(const pcpvec::PcpVectorsInstance& pv);

// e: Sigma -> {0,1}^d_code with every pair at distance >= (1/2 - delta) d_code.
class BinaryCode {
 public:
  BinaryCode(std::size_t d_code, double delta, std::vector<std::vector<std::uint32_t>> words);

  std::size_t sigma_size() const noexcept { return words_.size(); }
  std::size_t d_code() const noexcept { return d_code_; }
  double delta() const noexcept { return delta_; }
  const std::vector<std::uint32_t>& word(std::size_t s) const { return words_.at(s); }

  // ceil((1/2 - delta) d_code)
  std::size_t required_distance() const noexcept;
  // Exhaustive pairwise minimum (d_code when fewer than two words).
  std::size_t min_distance() const;
  // Throws InvalidArgument if some pair is closer than required.
  void verify() const;

 private:
  std::size_t d_code_;
  double delta_;
  std::vector<std::vector<std::uint32_t>> words_;
};

std::size_t required_distance(std::size_t d_code, double delta) noexcept;

// Seeded random code, each word resampled until it clears every earlier one.
BinaryCode make_binary_code(std::uint64_t sigma_size, double delta, std::size_t d_code, std::uint64_t seed,
                            std::size_t retry_budget = 10'000);
// Reed-Solomon over F_p with `message_len` coefficients, each codeword
// symbol replaced by its Hadamard codeword on ceil(log2 p) bits.
BinaryCode make_rs_hadamard_code(std::uint64_t sigma_size, std::uint32_t p, std::size_t message_len, double delta);

RegexInstance to_binary(const RegexInstance& instance, const BinaryCode& code);

}  // namespace pcpgap::gadget_regex
