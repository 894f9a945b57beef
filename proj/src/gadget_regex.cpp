#include "pcpgap/gadget_regex.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "pcpgap/error.hpp"

namespace pcpgap::gadget_regex {

RegexAst::NodeId RegexAst::push(Kind kind, std::vector<NodeId> children) {
  if (nodes_.size() >= std::numeric_limits<NodeId>::max()) throw SizeGuardError("regex arena full");
  const auto id = static_cast<NodeId>(nodes_.size());
  for (auto c : children)
    if (c >= id) throw InvalidArgument("regex child id must precede its parent");
  Node n{kind, 0, static_cast<std::uint32_t>(children_.size()), static_cast<std::uint32_t>(children.size())};
  children_.insert(children_.end(), children.begin(), children.end());
  nodes_.push_back(n);
  root_ = id;
  return id;
}

RegexAst::NodeId RegexAst::literal(std::uint32_t symbol) {
  const auto id = push(Kind::literal, {});
  nodes_[id].symbol = symbol;
  return id;
}

RegexAst::NodeId RegexAst::alternation(std::vector<NodeId> children) {
  if (children.empty()) throw InvalidArgument("alternation with no operands");
  if (children.size() == 1) return children.front();
  return push(Kind::alternation, std::move(children));
}

RegexAst::NodeId RegexAst::concatenation(std::vector<NodeId> children) {
  if (children.empty()) throw InvalidArgument("concatenation with no operands");
  if (children.size() == 1) return children.front();
  return push(Kind::concatenation, std::move(children));
}

void RegexAst::set_root(NodeId id) {
  if (id >= nodes_.size()) throw InvalidArgument("regex root out of range");
  root_ = id;
}

RegexAst::NodeId RegexAst::root() const {
  if (nodes_.empty()) throw InvalidArgument("empty regular expression");
  return root_;
}

std::span<const RegexAst::NodeId> RegexAst::children(NodeId id) const {
  const Node& n = nodes_.at(id);
  return std::span<const NodeId>(children_).subspan(n.first, n.count);
}

namespace {

std::vector<std::size_t> node_lengths(const RegexAst& ast) {
  std::vector<std::size_t> len(ast.size());
  for (RegexAst::NodeId id = 0; id < ast.size(); ++id) {
    switch (ast.kind(id)) {
      case RegexAst::Kind::literal:
        len[id] = 1;
        break;
      case RegexAst::Kind::alternation: {
        const auto ch = ast.children(id);
        len[id] = len[ch[0]];
        for (auto c : ch)
          if (len[c] != len[id])
            throw ValidationError("alternation node " + std::to_string(id) + " mixes branch lengths " +
                                  std::to_string(len[id]) + " and " + std::to_string(len[c]));
        break;
      }
      case RegexAst::Kind::concatenation:
        len[id] = 0;
        for (auto c : ast.children(id)) len[id] += len[c];
        break;
    }
  }
  return len;
}

}  // namespace

std::size_t RegexAst::language_length() const { return node_lengths(*this)[root()]; }

void RegexAst::validate() const {
  if (nodes_.empty()) throw ValidationError("empty regular expression");
  if (root_ != nodes_.size() - 1) throw ValidationError("regex root must be the last node");
  std::vector<std::uint8_t> parents(nodes_.size(), 0);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    if (n.kind == Kind::literal && n.count != 0) throw ValidationError("literal with operands");
    if (n.kind != Kind::literal && n.count < 2) throw ValidationError("operator with fewer than two operands");
    for (auto c : children(id)) {
      if (c >= id) throw ValidationError("regex child does not precede its parent");
      if (parents[c]++) throw ValidationError("regex node shared between parents");
    }
  }
  for (NodeId id = 0; id + 1 < nodes_.size(); ++id)
    if (!parents[id]) throw ValidationError("unreachable regex node " + std::to_string(id));
  (void)language_length();
}

bool operator==(const RegexAst& a, const RegexAst& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  std::vector<std::pair<RegexAst::NodeId, RegexAst::NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    if (a.kind(x) != b.kind(y)) return false;
    if (a.kind(x) == RegexAst::Kind::literal) {
      if (a.symbol(x) != b.symbol(y)) return false;
      continue;
    }
    const auto cx = a.children(x), cy = b.children(y);
    if (cx.size() != cy.size()) return false;
    for (std::size_t i = 0; i < cx.size(); ++i) stack.emplace_back(cx[i], cy[i]);
  }
  return true;
}

namespace {

void emit(const RegexAst& ast, RegexAst::NodeId id, RegexAst::Kind parent, bool top, std::string& out) {
  using K = RegexAst::Kind;
  switch (ast.kind(id)) {
    case K::literal:
      out += '#';
      out += std::to_string(ast.symbol(id));
      return;
    case K::alternation: {
      const bool paren = !top;
      if (paren) out += '(';
      bool first = true;
      for (auto c : ast.children(id)) {
        if (!first) out += '|';
        first = false;
        emit(ast, c, K::alternation, false, out);
      }
      if (paren) out += ')';
      return;
    }
    case K::concatenation: {
      const bool paren = !top && parent == K::concatenation;
      if (paren) out += '(';
      for (auto c : ast.children(id)) emit(ast, c, K::concatenation, false, out);
      if (paren) out += ')';
      return;
    }
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RegexAst run() {
    const auto root = expr();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') fail("unbalanced ')'");
      fail(std::string("unexpected character '") + text_[pos_] + "'");
    }
    ast_.set_root(root);
    return std::move(ast_);
  }

 private:
  static constexpr std::size_t kMaxDepth = 2000;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_), pos_);
  }
  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  RegexAst::NodeId expr() {
    if (++depth_ > kMaxDepth) fail("expression nested too deeply");
    std::vector<RegexAst::NodeId> alts{concat()};
    while (at('|')) {
      ++pos_;
      alts.push_back(concat());
    }
    --depth_;
    return ast_.alternation(std::move(alts));
  }

  RegexAst::NodeId concat() {
    std::vector<RegexAst::NodeId> parts;
    while (at('#') || at('(')) parts.push_back(atom());
    if (parts.empty()) fail("empty operand");
    return ast_.concatenation(std::move(parts));
  }

  RegexAst::NodeId atom() {
    if (at('(')) {
      const std::size_t open = pos_++;
      const auto inner = expr();
      if (!at(')')) {
        pos_ = open;
        fail("unbalanced '('");
      }
      ++pos_;
      return inner;
    }
    ++pos_;  // '#'
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == start) fail("non-decimal literal");
    std::uint32_t value = 0;
    const auto r = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (r.ec != std::errc()) {
      pos_ = start;
      fail("literal out of range");
    }
    return ast_.literal(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  RegexAst ast_;
};

}  // namespace

std::string serialize(const RegexAst& ast) {
  std::string out;
  emit(ast, ast.root(), RegexAst::Kind::alternation, true, out);
  return out;
}

RegexAst parse(std::string_view text) { return Parser(text).run(); }

RegexBuild build_regex(const pcpvec::PcpVectorsInstance& pv) {
  RegexBuild out;
  std::vector<RegexAst::NodeId> branches;
  for (std::size_t a = 0; a < pv.A.size(); ++a) {
    const auto& av = pv.A[a];
    bool empty_row = false;
    for (std::size_t row = 0; row < av.rows() && !empty_row; ++row) empty_row = av.accepted_count(row) == 0;
    if (empty_row) continue;
    std::vector<RegexAst::NodeId> rows;
    rows.reserve(av.rows());
    for (std::size_t row = 0; row < av.rows(); ++row) {
      std::vector<RegexAst::NodeId> lits;
      for (auto s : av.accepted(row)) lits.push_back(out.ast.literal(static_cast<std::uint32_t>(s)));
      rows.push_back(out.ast.alternation(std::move(lits)));
    }
    branches.push_back(out.ast.concatenation(std::move(rows)));
    out.branches.push_back(a);
  }
  if (branches.empty()) throw ValidationError("every Alice vector has an all-bottom row; the regex language is empty");
  out.ast.set_root(out.ast.alternation(std::move(branches)));
  return out;
}

std::size_t min_hamming(const RegexAst& ast, std::span<const std::uint32_t> y) {
  const auto len = node_lengths(ast);
  const auto root = ast.root();
  if (len[root] != y.size())
    throw InvalidArgument("string length " + std::to_string(y.size()) + " differs from language length " +
                          std::to_string(len[root]));
  // Offsets flow from parents (higher ids) to children.
  std::vector<std::size_t> offset(ast.size(), 0);
  for (std::size_t id = root + 1; id-- > 0;) {
    if (ast.kind(static_cast<RegexAst::NodeId>(id)) != RegexAst::Kind::concatenation) {
      for (auto c : ast.children(static_cast<RegexAst::NodeId>(id))) offset[c] = offset[id];
      continue;
    }
    std::size_t at = offset[id];
    for (auto c : ast.children(static_cast<RegexAst::NodeId>(id))) {
      offset[c] = at;
      at += len[c];
    }
  }
  std::vector<std::size_t> cost(root + 1, 0);
  for (RegexAst::NodeId id = 0; id <= root; ++id) {
    switch (ast.kind(id)) {
      case RegexAst::Kind::literal:
        cost[id] = ast.symbol(id) != y[offset[id]];
        break;
      case RegexAst::Kind::alternation: {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (auto c : ast.children(id)) best = std::min(best, cost[c]);
        cost[id] = best;
        break;
      }
      case RegexAst::Kind::concatenation: {
        std::size_t sum = 0;
        for (auto c : ast.children(id)) sum += cost[c];
        cost[id] = sum;
        break;
      }
    }
  }
  return cost[root];
}

void RegexInstance::validate() const {
  if (strings.empty()) throw ValidationError("regex instance has no strings");
  expr.validate();
  if (expr.language_length() != length) throw ValidationError("language length does not match recorded length");
  if (binary && alphabet_size != 2) throw ValidationError("binary instance must have alphabet size 2");
  for (RegexAst::NodeId id = 0; id < expr.size(); ++id)
    if (expr.kind(id) == RegexAst::Kind::literal && expr.symbol(id) >= alphabet_size)
      throw ValidationError("literal #" + std::to_string(expr.symbol(id)) + " outside the alphabet");
  for (std::size_t i = 0; i < strings.size(); ++i) {
    if (strings[i].size() != length)
      throw ValidationError("string " + std::to_string(i) + " has length " + std::to_string(strings[i].size()) +
                            ", expected " + std::to_string(length));
    for (auto s : strings[i])
      if (s >= alphabet_size) throw ValidationError("string " + std::to_string(i) + " uses a symbol outside the alphabet");
  }
  if (!branches.empty()) {
    const auto r = expr.root();
    const std::size_t arity = expr.kind(r) == RegexAst::Kind::alternation ? expr.children(r).size() : 1;
    if (arity != branches.size() && !binary) throw ValidationError("branch list does not match the outer alternation");
  }
}

RegexInstance build_regex_instance(const pcpvec::PcpVectorsInstance& pv) {
  pv.validate();
  auto built = build_regex(pv);
  RegexInstance out;
  out.expr = std::move(built.ast);
  out.branches = std::move(built.branches);
  out.alphabet_size = pv.K;
  out.length = static_cast<std::size_t>(pv.L);
  for (const auto& b : pv.B) out.strings.emplace_back(b.begin(), b.end());
  out.source = SourceInfo{pv.formula_digest, pv.q, pv.columns, pv.rounds, pv.L, pv.K};
  const Rational l(static_cast<std::int64_t>(pv.L));
  out.gap = ExpectedGap{Objective::minimize, Rational(0), l * (Rational(1) - pv.soundness_bound())};
  return out;
}

RegexInstance to_binary(const RegexInstance& instance, const BinaryCode& code) {
  code.verify();
  if (code.sigma_size() < instance.alphabet_size)
    throw InvalidArgument("code covers " + std::to_string(code.sigma_size()) + " symbols, alphabet has " +
                          std::to_string(instance.alphabet_size));
  const auto& src = instance.expr;
  RegexInstance out;
  std::vector<RegexAst::NodeId> map(src.size());
  for (RegexAst::NodeId id = 0; id < src.size(); ++id) {
    std::vector<RegexAst::NodeId> ch;
    switch (src.kind(id)) {
      case RegexAst::Kind::literal:
        for (auto bit : code.word(src.symbol(id))) ch.push_back(out.expr.literal(bit));
        map[id] = out.expr.concatenation(std::move(ch));
        break;
      case RegexAst::Kind::alternation:
        for (auto c : src.children(id)) ch.push_back(map[c]);
        map[id] = out.expr.alternation(std::move(ch));
        break;
      case RegexAst::Kind::concatenation:
        for (auto c : src.children(id)) ch.push_back(map[c]);
        map[id] = out.expr.concatenation(std::move(ch));
        break;
    }
  }
  out.expr.set_root(map[src.root()]);
  for (const auto& s : instance.strings) {
    std::vector<std::uint32_t> bits;
    bits.reserve(s.size() * code.d_code());
    for (auto sym : s) {
      const auto& w = code.word(sym);
      bits.insert(bits.end(), w.begin(), w.end());
    }
    out.strings.push_back(std::move(bits));
  }
  out.alphabet_size = 2;
  out.length = instance.length * code.d_code();
  out.branches = instance.branches;
  out.binary = true;
  out.code = BinaryCodeInfo{code.d_code(), code.delta(), code.min_distance()};
  out.source = instance.source;
  const Rational& s = instance.gap.soundness;
  std::int64_t min_h = s.num() >= 0 ? (s.num() + s.den() - 1) / s.den() : 0;  // distances are integers
  out.gap = ExpectedGap{Objective::minimize, Rational(0),
                        Rational(min_h * static_cast<std::int64_t>(code.required_distance()))};
  return out;
}

}  // namespace pcpgap::gadget_regex
