// Copyright 2026 The rgdecode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rgdecode/pauli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace rgdecode {

char to_char(PauliLabel l) { return "IXZY"[static_cast<int>(l)]; }

char to_char(GeneratorTag t) { return "STEL"[static_cast<int>(t)]; }

PauliWord::PauliWord(BitVector x, BitVector z) : x_(std::move(x)), z_(std::move(z)) {
  if (x_.size() != z_.size()) throw DimensionError("x and z parts differ in length");
}

PauliWord PauliWord::single(std::size_t n, std::size_t q, PauliLabel l) {
  PauliWord w(n);
  w.set(q, l);
  return w;
}

namespace {

PauliLabel parse_letter(char c) {
  switch (c) {
    case 'I': return PauliLabel::I;
    case 'X': return PauliLabel::X;
    case 'Z': return PauliLabel::Z;
    case 'Y': return PauliLabel::Y;
    default: throw ConfigError(std::string("unknown Pauli letter '") + c + "'");
  }
}

struct Token {
  PauliLabel label;
  std::size_t qubit;
};

Token parse_token(const std::string& tok) {
  if (tok.size() < 2) throw ConfigError("malformed Pauli token '" + tok + "'");
  std::size_t pos = 0;
  const unsigned long q = std::stoul(tok.substr(1), &pos);
  if (pos != tok.size() - 1) throw ConfigError("malformed Pauli token '" + tok + "'");
  return {parse_letter(tok[0]), q};
}

}  // namespace

PauliWord PauliWord::parse(std::string_view text, std::size_t n) {
  PauliWord w(n);
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const Token t = parse_token(tok);
    if (t.qubit >= n) throw DimensionError("qubit index " + std::to_string(t.qubit) + " out of range");
    w.set(t.qubit, restrict(w, t.qubit) * t.label);
  }
  return w;
}

std::size_t PauliWord::weight() const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < x_.words().size(); ++w)
    c += static_cast<std::size_t>(std::popcount(x_.words()[w] | z_.words()[w]));
  return c;
}

void PauliWord::set(std::size_t q, PauliLabel l) {
  if (q >= size()) throw DimensionError("qubit index out of range");
  const auto v = static_cast<std::uint8_t>(l);
  x_.set(q, v & 1u);
  z_.set(q, v & 2u);
}

PauliWord& PauliWord::operator*=(const PauliWord& o) {
  if (o.size() != size()) throw DimensionError("Pauli words act on different qubit counts");
  x_ ^= o.x_;
  z_ ^= o.z_;
  return *this;
}

std::string PauliWord::str() const {
  std::string out;
  for (std::size_t q = 0; q < size(); ++q) {
    const PauliLabel l = restrict(*this, q);
    if (l == PauliLabel::I) continue;
    if (!out.empty()) out += ' ';
    out += to_char(l);
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

PauliWord multiply(const PauliWord& a, const PauliWord& b) { return a * b; }

bool commutes(const PauliWord& a, const PauliWord& b) {
  if (a.size() != b.size()) throw DimensionError("Pauli words act on different qubit counts");
  return a.x().dot(b.z()) == a.z().dot(b.x());
}

PauliLabel restrict(const PauliWord& w, std::size_t q) {
  if (q >= w.size()) throw DimensionError("qubit index " + std::to_string(q) + " out of range");
  return static_cast<PauliLabel>(static_cast<std::uint8_t>(w.x().get(q)) |
                                 static_cast<std::uint8_t>(w.z().get(q) << 1));
}

// ---------------------------------------------------------------------------

CellBasis::CellBasis(std::size_t num_qubits, std::vector<PauliWord> generators, std::vector<GeneratorTag> tags,
                     std::vector<std::string> names, std::vector<PauliWord> checks)
    : n_(num_qubits), gens_(std::move(generators)), tags_(std::move(tags)), names_(std::move(names)),
      checks_(std::move(checks)) {
  if (tags_.size() != gens_.size()) throw DimensionError("one tag per generator required");
  for (const auto& g : gens_)
    if (g.size() != n_) throw DimensionError("generator acts on the wrong number of qubits");
  for (const auto& c : checks_)
    if (c.size() != n_) throw DimensionError("check acts on the wrong number of qubits");
  x_only_ = std::none_of(gens_.begin(), gens_.end(), [](const PauliWord& g) { return g.has_z(); });
  if (names_.empty()) {
    int counts[4] = {0, 0, 0, 0};
    for (auto t : tags_) {
      const int k = static_cast<int>(t);
      names_.push_back(std::string(1, to_char(t)) + std::to_string(counts[k]++));
    }
  }
  if (names_.size() != gens_.size()) throw DimensionError("one name per generator required");
  factorize();
}

BitVector CellBasis::flatten(const PauliWord& w) const {
  if (w.size() != n_) throw DimensionError("word acts on the wrong number of qubits");
  if (x_only_) {
    if (w.has_z()) throw DecompositionError("word " + w.str() + " has a Z part but the basis is X-only");
    return w.x();
  }
  BitVector v(2 * n_);
  for (std::size_t q = 0; q < n_; ++q) {
    v.set(q, w.x().get(q));
    v.set(n_ + q, w.z().get(q));
  }
  return v;
}

void CellBasis::factorize() {
  reduced_.clear();
  pivot_.clear();
  combo_.clear();
  const std::size_t k = gens_.size();
  for (std::size_t i = 0; i < k; ++i) {
    BitVector row = flatten(gens_[i]);
    BitVector combo(k);
    combo.set(i);
    for (std::size_t r = 0; r < reduced_.size(); ++r) {
      if (row.get(pivot_[r])) {
        row ^= reduced_[r];
        combo ^= combo_[r];
      }
    }
    std::size_t p = 0;
    while (p < row.size() && !row.get(p)) ++p;
    if (p == row.size()) continue;  // dependent; validate() reports it
    // Keep every stored row free of the new pivot so reduction is one pass.
    for (std::size_t r = 0; r < reduced_.size(); ++r) {
      if (reduced_[r].get(p)) {
        reduced_[r] ^= row;
        combo_[r] ^= combo;
      }
    }
    reduced_.push_back(std::move(row));
    pivot_.push_back(p);
    combo_.push_back(std::move(combo));
  }
}

ExponentVector CellBasis::decompose(const PauliWord& w) const {
  BitVector v = flatten(w);
  ExponentVector e(gens_.size());
  for (std::size_t r = 0; r < reduced_.size(); ++r) {
    if (v.get(pivot_[r])) {
      v ^= reduced_[r];
      e ^= combo_[r];
    }
  }
  if (v.any()) {
    PauliWord residual(n_);
    for (std::size_t q = 0; q < n_; ++q) {
      const bool xb = v.get(q);
      const bool zb = x_only_ ? false : v.get(n_ + q);
      residual.set(q, static_cast<PauliLabel>(static_cast<int>(xb) | (static_cast<int>(zb) << 1)));
    }
    throw DecompositionError("word " + w.str() + " is not in the span; residual " + residual.str());
  }
  return e;
}

ExponentVector decompose(const PauliWord& w, const CellBasis& basis) { return basis.decompose(w); }

PauliWord CellBasis::compose(const ExponentVector& e) const {
  if (e.size() != gens_.size()) throw DimensionError("exponent vector length differs from basis size");
  PauliWord w(n_);
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (e.get(i)) w *= gens_[i];
  return w;
}

std::vector<std::size_t> CellBasis::indices_with(GeneratorTag t) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tags_.size(); ++i)
    if (tags_[i] == t) out.push_back(i);
  return out;
}

std::optional<std::size_t> CellBasis::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

CellBasis CellBasis::sub_basis(const std::vector<std::size_t>& which) const {
  std::vector<PauliWord> g;
  std::vector<GeneratorTag> t;
  std::vector<std::string> nm;
  for (auto i : which) {
    if (i >= gens_.size()) throw DimensionError("generator index out of range");
    g.push_back(gens_[i]);
    t.push_back(tags_[i]);
    nm.push_back(names_[i]);
  }
  return CellBasis(n_, std::move(g), std::move(t), std::move(nm), checks_);
}

void CellBasis::validate() const {
  if (reduced_.size() != gens_.size())
    throw ConfigError("cell generators are linearly dependent (rank " + std::to_string(reduced_.size()) + " of " +
                      std::to_string(gens_.size()) + ")");
  const std::vector<PauliWord> fallback = [&] {
    std::vector<PauliWord> s;
    for (auto i : indices_with(GeneratorTag::S)) s.push_back(gens_[i]);
    return s;
  }();
  const auto& checks = checks_.empty() ? fallback : checks_;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    std::size_t anti = 0;
    for (const auto& c : checks) anti += commutes(gens_[i], c) ? 0 : 1;
    if (tags_[i] == GeneratorTag::T && anti != 1)
      throw ConfigError("pure error " + names_[i] + " anticommutes with " + std::to_string(anti) +
                        " checks, expected exactly one");
    if (tags_[i] != GeneratorTag::T && anti != 0)
      throw ConfigError("generator " + names_[i] + " anticommutes with a measured check");
  }
  // Each check must be hit by exactly one T: otherwise the syndrome is not readable from T exponents.
  for (const auto& c : checks) {
    std::size_t hits = 0;
    for (auto i : indices_with(GeneratorTag::T)) hits += commutes(gens_[i], c) ? 0 : 1;
    if (hits != 1) throw ConfigError("check " + c.str() + " has " + std::to_string(hits) + " conjugate pure errors");
  }
}

std::string CellBasis::serialize() const {
  std::ostringstream out;
  out << "qubits " << n_ << '\n';
  for (std::size_t i = 0; i < gens_.size(); ++i)
    out << to_char(tags_[i]) << ' ' << names_[i] << ": " << gens_[i].str() << '\n';
  for (const auto& c : checks_) out << "C " << c.str() << '\n';
  return out.str();
}

CellBasis CellBasis::parse(std::string_view text) {
  struct Line {
    char tag;
    std::string name;
    std::vector<Token> tokens;
  };
  std::vector<Line> lines;
  std::optional<std::size_t> declared;
  std::size_t max_q = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "qubits") {
      std::size_t n = 0;
      if (!(ls >> n)) throw ConfigError("line " + std::to_string(lineno) + ": expected qubit count");
      declared = n;
      continue;
    }
    if (head.size() != 1 || std::string("STELC").find(head[0]) == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": unknown tag '" + head + "'");
    Line l{head[0], {}, {}};
    std::string tok;
    while (ls >> tok) {
      if (tok.back() == ':') {
        l.name = tok.substr(0, tok.size() - 1);
        continue;
      }
      l.tokens.push_back(parse_token(tok));
      max_q = std::max(max_q, l.tokens.back().qubit + 1);
    }
    if (l.tokens.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty operator");
    lines.push_back(std::move(l));
  }
  const std::size_t n = declared.value_or(max_q);
  if (max_q > n) throw ConfigError("qubit index exceeds declared qubit count");

  std::vector<PauliWord> gens, checks;
  std::vector<GeneratorTag> tags;
  std::vector<std::string> names;
  int counts[4] = {0, 0, 0, 0};
  for (const auto& l : lines) {
    PauliWord w(n);
    for (const auto& t : l.tokens) w.set(t.qubit, restrict(w, t.qubit) * t.label);
    if (l.tag == 'C') {
      checks.push_back(std::move(w));
      continue;
    }
    const GeneratorTag tag = l.tag == 'S'   ? GeneratorTag::S
                             : l.tag == 'T' ? GeneratorTag::T
                             : l.tag == 'E' ? GeneratorTag::E
                                            : GeneratorTag::L;
    const int k = static_cast<int>(tag);
    names.push_back(l.name.empty() ? std::string(1, l.tag) + std::to_string(counts[k]) : l.name);
    ++counts[k];
    gens.push_back(std::move(w));
    tags.push_back(tag);
  }
  return CellBasis(n, std::move(gens), std::move(tags), std::move(names), std::move(checks));
}

CellBasis CellBasis::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open cell file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::uint64_t CellBasis::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace rgdecode
