#include "revlab/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace revlab {

std::vector<World> WorldSet::worlds() const {
  std::vector<World> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (World w : *this) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------------------
// Signature

namespace {

bool valid_atom_name(std::string_view name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  if (name == "true" || name == "false") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

Signature::Signature(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw SignatureError("signature must contain at least one atom");
  if (atoms_.size() > kMaxAtoms) {
    throw SignatureError("signature has " + std::to_string(atoms_.size()) +
                         " atoms; at most " + std::to_string(kMaxAtoms) + " are supported");
  }
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!valid_atom_name(atoms_[i])) throw SignatureError("invalid atom name '" + atoms_[i] + "'");
    for (std::size_t j = 0; j < i; ++j) {
      if (atoms_[i] == atoms_[j]) throw SignatureError("duplicate atom '" + atoms_[i] + "'");
    }
  }
}

Signature Signature::parse(std::string_view text) {
  std::vector<std::string> atoms;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!current.empty()) atoms.push_back(std::exchange(current, {}));
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) atoms.push_back(current);
  return Signature(std::move(atoms));
}

Signature Signature::with_atoms(std::size_t n) {
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back("p" + std::to_string(i));
  return Signature(std::move(atoms));
}

int Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

WorldSet Signature::atom_models(std::size_t index) const {
  const std::size_t bit = atoms_.size() - 1 - index;
  std::uint64_t mask = 0;
  for (World w = 0; w < world_count(); ++w) {
    if ((w >> bit) & 1U) mask |= std::uint64_t{1} << w;
  }
  return WorldSet(mask);
}

std::string Signature::world_name(World w) const {
  std::string s(atoms_.size(), '0');
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if ((w >> (atoms_.size() - 1 - i)) & 1U) s[i] = '1';
  }
  return s;
}

World Signature::parse_world(std::string_view text) const {
  if (text.size() != atoms_.size()) {
    throw std::invalid_argument("world '" + std::string(text) + "' must have " +
                                std::to_string(atoms_.size()) + " digits");
  }
  World w = 0;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("world '" + std::string(text) + "' is not a bit string");
    w = (w << 1) | static_cast<World>(c - '0');
  }
  return w;
}

std::string Signature::format(WorldSet ws) const {
  std::string out;
  for (World w : ws) {
    if (!out.empty()) out += ' ';
    out += world_name(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::make(Kind k, std::vector<Formula> children) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::top() { return make(Kind::Top, {}); }
Formula Formula::bottom() { return make(Kind::Bottom, {}); }
Formula Formula::atom(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->atom = index;
  return Formula(std::move(n));
}
Formula Formula::negation(Formula f) { return make(Kind::Not, {std::move(f)}); }
Formula Formula::conjunction(Formula l, Formula r) { return make(Kind::And, {std::move(l), std::move(r)}); }
Formula Formula::disjunction(Formula l, Formula r) { return make(Kind::Or, {std::move(l), std::move(r)}); }
Formula Formula::implication(Formula l, Formula r) { return make(Kind::Implies, {std::move(l), std::move(r)}); }
Formula Formula::equivalence(Formula l, Formula r) { return make(Kind::Iff, {std::move(l), std::move(r)}); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Formula::Kind::Atom) return a.atom_index() == b.atom_index();
  return a.node_->children == b.node_->children;
}

namespace {

// Binding strength; higher binds tighter.
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
  }
}

void render(const Formula& f, const Signature& sig, std::string& out) {
  using K = Formula::Kind;
  auto child = [&](const Formula& c, bool need_parens) {
    if (need_parens) out += '(';
    render(c, sig, out);
    if (need_parens) out += ')';
  };
  switch (f.kind()) {
    case K::Top: out += "true"; return;
    case K::Bottom: out += "false"; return;
    case K::Atom: out += sig.atoms().at(f.atom_index()); return;
    case K::Not:
      out += '!';
      child(f.left(), precedence(f.left().kind()) < precedence(K::Not));
      return;
    default: break;
  }
  const int p = precedence(f.kind());
  const bool right_assoc = f.kind() == K::Implies || f.kind() == K::Iff;
  const char* op = f.kind() == K::And ? " & " : f.kind() == K::Or ? " | " : f.kind() == K::Implies ? " -> " : " <-> ";
  const int lp = precedence(f.left().kind());
  const int rp = precedence(f.right().kind());
  child(f.left(), right_assoc ? lp <= p : lp < p);
  out += op;
  child(f.right(), right_assoc ? rp < p : rp <= p);
}

}  // namespace

std::string Formula::to_string(const Signature& sig) const {
  std::string out;
  render(*this, sig, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

UnknownAtomError::UnknownAtomError(std::string atom, std::size_t offset)
    : std::runtime_error("unknown atom '" + atom + "' at offset " + std::to_string(offset)),
      atom_(std::move(atom)),
      offset_(offset) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

  Formula run() {
    Formula f = iff();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Formula iff() {
    Formula lhs = implies();
    if (accept("<->")) return Formula::equivalence(std::move(lhs), iff());
    return lhs;
  }

  Formula implies() {
    Formula lhs = disj();
    skip_space();
    // "<->" starts with '<', never with '-', so "->" is unambiguous here.
    if (accept("->")) return Formula::implication(std::move(lhs), implies());
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    while (accept("|")) lhs = Formula::disjunction(std::move(lhs), conj());
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    while (accept("&")) lhs = Formula::conjunction(std::move(lhs), unary());
    return lhs;
  }

  Formula unary() {
    if (accept("!")) return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    if (accept("(")) {
      Formula inner = iff();
      if (!accept(")")) throw ParseError(pos_, "expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (!(c >= 'a' && c <= 'z')) throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'");
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (!((d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_')) break;
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "true") return Formula::top();
    if (name == "false") return Formula::bottom();
    const int idx = sig_.index_of(name);
    if (idx < 0) throw UnknownAtomError(std::string(name), start);
    return Formula::atom(static_cast<std::size_t>(idx));
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text, const Signature& sig) { return Parser(text, sig).run(); }

// ---------------------------------------------------------------------------
// Semantics

WorldSet models(const Formula& f, const Signature& sig) {
  using K = Formula::Kind;
  const WorldSet all = sig.all_worlds();
  switch (f.kind()) {
    case K::Top: return all;
    case K::Bottom: return WorldSet();
    case K::Atom: return sig.atom_models(f.atom_index());
    case K::Not: return all - models(f.left(), sig);
    case K::And: return models(f.left(), sig) & models(f.right(), sig);
    case K::Or: return models(f.left(), sig) | models(f.right(), sig);
    case K::Implies: return (all - models(f.left(), sig)) | models(f.right(), sig);
    case K::Iff: {
      const WorldSet l = models(f.left(), sig);
      const WorldSet r = models(f.right(), sig);
      return (l & r) | (all - (l | r));
    }
  }
  return WorldSet();
}

Formula formula_of_worlds(WorldSet ws, const Signature& sig) {
  if (ws.empty()) return Formula::bottom();
  std::vector<Formula> minterms;
  const std::size_t n = sig.atom_count();
  for (World w : ws) {
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < n; ++i) {
      const bool value = (w >> (n - 1 - i)) & 1U;
      lits.push_back(value ? Formula::atom(i) : Formula::negation(Formula::atom(i)));
    }
    Formula term = lits.front();
    for (std::size_t i = 1; i < lits.size(); ++i) term = Formula::conjunction(std::move(term), lits[i]);
    minterms.push_back(std::move(term));
  }
  Formula out = minterms.front();
  for (std::size_t i = 1; i < minterms.size(); ++i) out = Formula::disjunction(std::move(out), minterms[i]);
  return out;
}

std::size_t class_count(const Signature& sig) {
  if (sig.atom_count() > kMaxExhaustiveAtoms) {
    throw SignatureError("formula classes can only be enumerated for at most " +
                         std::to_string(kMaxExhaustiveAtoms) + " atoms");
  }
  return std::size_t{1} << sig.world_count();
}

std::vector<WorldSet> enumerate_formula_classes(const Signature& sig) {
  const std::size_t count = class_count(sig);
  std::vector<WorldSet> out;
  out.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) out.emplace_back(m);
  return out;
}

}  // namespace revlab
