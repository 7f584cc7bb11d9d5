#include "qgf/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qgf {

namespace {

constexpr int kMaxQubits = 64;

// 2-bit codes used internally: bit0 = X component, bit1 = Z component.
// 0 = I, 1 = X, 2 = Z, 3 = Y.
constexpr int code_of(PauliOp op) {
  switch (op) {
    case PauliOp::I: return 0;
    case PauliOp::X: return 1;
    case PauliOp::Z: return 2;
    case PauliOp::Y: return 3;
  }
  return 0;
}

constexpr PauliOp op_of_code(int code) {
  constexpr PauliOp lut[4] = {PauliOp::I, PauliOp::X, PauliOp::Z, PauliOp::Y};
  return lut[code & 3];
}

// Exponent of i in the single-qubit product sigma_a * sigma_b, indexed by
// the 2-bit codes above. Cyclic products (XY, YZ, ZX) pick up +i.
constexpr int kPhaseExp[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 3, 1},
    {0, 1, 0, 3},
    {0, 3, 1, 0},
};

constexpr cplx kQuarterPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_same_size(const PauliWord& a, const PauliWord& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli words act on different qubit counts");
  }
}

std::string format_coeff(cplx c) {
  char buf[80];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.17g", c.real());
  } else {
    std::snprintf(buf, sizeof(buf), "(%.17g%+.17gj)", c.real(), c.imag());
  }
  return buf;
}

cplx parse_coeff(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') {
    s = s.substr(1, s.size() - 2);
    if (s.empty() || s.back() != 'j') {
      throw std::invalid_argument("bad complex coefficient: " + s);
    }
    s.pop_back();
    // Split at the sign of the imaginary part (first +/- not at position 0
    // and not part of an exponent).
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if ((s[i] == '+' || s[i] == '-') &&
          s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
      }
    }
    if (split == std::string::npos) {
      throw std::invalid_argument("bad complex coefficient: " + s);
    }
    return {std::stod(s.substr(0, split)), std::stod(s.substr(split))};
  }
  return {std::stod(s), 0.0};
}

}  // namespace

char pauli_char(PauliOp op) {
  switch (op) {
    case PauliOp::I: return 'I';
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    case PauliOp::Z: return 'Z';
  }
  return '?';
}

PauliOp pauli_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I': return PauliOp::I;
    case 'X': return PauliOp::X;
    case 'Y': return PauliOp::Y;
    case 'Z': return PauliOp::Z;
  }
  throw std::invalid_argument(std::string("unknown Pauli symbol: ") + c);
}

PauliWord::PauliWord(int n_qubits) : n_(n_qubits) {
  if (n_qubits <= 0 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
}

PauliWord::PauliWord(std::string_view letters)
    : PauliWord(static_cast<int>(letters.size())) {
  for (int q = 0; q < n_; ++q) set(q, pauli_from_char(letters[q]));
}

PauliWord PauliWord::single(int n_qubits, int qubit, PauliOp op) {
  PauliWord w(n_qubits);
  w.set(qubit, op);
  return w;
}

PauliOp PauliWord::op(int qubit) const {
  if (qubit < 0 || qubit >= n_) throw std::out_of_range("qubit index");
  const int code = static_cast<int>((x_ >> qubit) & 1) |
                   (static_cast<int>((z_ >> qubit) & 1) << 1);
  return op_of_code(code);
}

PauliWord& PauliWord::set(int qubit, PauliOp op) {
  if (qubit < 0 || qubit >= n_) throw std::out_of_range("qubit index");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const int code = code_of(op);
  x_ = (x_ & ~bit) | ((code & 1) ? bit : 0);
  z_ = (z_ & ~bit) | ((code & 2) ? bit : 0);
  return *this;
}

int PauliWord::weight() const {
  return std::popcount(x_ | z_);
}

std::string PauliWord::letters() const {
  std::string out(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) out[q] = pauli_char(op(q));
  return out;
}

std::string PauliWord::tokens() const {
  if (is_identity()) return "I";
  std::string out;
  for (int q = 0; q < n_; ++q) {
    const PauliOp o = op(q);
    if (o == PauliOp::I) continue;
    if (!out.empty()) out += ' ';
    out += pauli_char(o);
    out += std::to_string(q);
  }
  return out;
}

PauliWord PauliWord::from_tokens(std::string_view tokens, int n_qubits) {
  PauliWord w(n_qubits);
  std::size_t i = 0;
  while (i < tokens.size()) {
    while (i < tokens.size() && std::isspace(static_cast<unsigned char>(tokens[i]))) ++i;
    if (i >= tokens.size()) break;
    const char sym = tokens[i++];
    if (std::toupper(static_cast<unsigned char>(sym)) == 'I') continue;
    std::size_t j = i;
    while (j < tokens.size() && std::isdigit(static_cast<unsigned char>(tokens[j]))) ++j;
    if (j == i) throw std::invalid_argument("Pauli token missing qubit index");
    const int qubit = std::stoi(std::string(tokens.substr(i, j - i)));
    if (qubit >= n_qubits) throw std::out_of_range("Pauli token qubit index");
    w.set(qubit, pauli_from_char(sym));
    i = j;
  }
  return w;
}

bool PauliWord::operator<(const PauliWord& other) const {
  if (n_ != other.n_) return n_ < other.n_;
  for (int q = 0; q < n_; ++q) {
    const auto a = static_cast<int>(op(q));
    const auto b = static_cast<int>(other.op(q));
    if (a != b) return a < b;
  }
  return false;
}

WordProduct multiply(const PauliWord& a, const PauliWord& b) {
  check_same_size(a, b);
  PauliWord out(a.n_qubits());
  std::uint64_t overlap = (a.x_mask() | a.z_mask()) & (b.x_mask() | b.z_mask());
  int exp = 0;
  while (overlap != 0) {
    const int q = std::countr_zero(overlap);
    overlap &= overlap - 1;
    const int ca = static_cast<int>((a.x_mask() >> q) & 1) |
                   (static_cast<int>((a.z_mask() >> q) & 1) << 1);
    const int cb = static_cast<int>((b.x_mask() >> q) & 1) |
                   (static_cast<int>((b.z_mask() >> q) & 1) << 1);
    exp += kPhaseExp[ca][cb];
  }
  for (int q = 0; q < a.n_qubits(); ++q) {
    const int code = (static_cast<int>(((a.x_mask() ^ b.x_mask()) >> q) & 1)) |
                     (static_cast<int>(((a.z_mask() ^ b.z_mask()) >> q) & 1) << 1);
    out.set(q, op_of_code(code));
  }
  return {kQuarterPhases[exp & 3], out};
}

bool commutes(const PauliWord& a, const PauliWord& b) {
  check_same_size(a, b);
  const int anti = std::popcount(a.x_mask() & b.z_mask()) +
                   std::popcount(a.z_mask() & b.x_mask());
  return (anti % 2) == 0;
}

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms)
    : terms_(std::move(terms)), n_(n_qubits) {
  for (const auto& t : terms_) {
    if (t.word.n_qubits() != n_) {
      throw std::invalid_argument("Pauli sum mixes qubit counts");
    }
  }
}

PauliSum& PauliSum::add(cplx coeff, const PauliWord& word) {
  if (n_ == 0) n_ = word.n_qubits();
  if (word.n_qubits() != n_) {
    throw std::invalid_argument("Pauli sum mixes qubit counts");
  }
  terms_.push_back({coeff, word});
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& t : other.terms_) add(t.coeff, t.word);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scale) {
  for (auto& t : terms_) t.coeff *= scale;
  return *this;
}

PauliSum PauliSum::simplified() const {
  PauliSum out(n_);
  if (terms_.empty()) return out;
  std::vector<PauliTerm> sorted = terms_;
  std::sort(sorted.begin(), sorted.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.word < b.word; });
  std::vector<PauliTerm> merged;
  for (const auto& t : sorted) {
    if (!merged.empty() && merged.back().word == t.word) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  double max_mag = 0;
  for (const auto& t : merged) max_mag = std::max(max_mag, std::abs(t.coeff));
  const double cutoff = max_mag * kDedupTol;
  for (const auto& t : merged) {
    if (std::abs(t.coeff) > cutoff) out.terms_.push_back(t);
  }
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& t : terms_) out.add(std::conj(t.coeff), t.word);
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  const PauliSum canon = simplified();
  for (const auto& t : canon.terms()) {
    if (std::abs(t.coeff.imag()) > tol) return false;
  }
  return true;
}

cplx PauliSum::identity_coeff() const {
  cplx c = 0;
  for (const auto& t : terms_) {
    if (t.word.is_identity()) c += t.coeff;
  }
  return c;
}

PauliSum PauliSum::without_identity() const {
  PauliSum out(n_);
  for (const auto& t : terms_) {
    if (!t.word.is_identity()) out.add(t.coeff, t.word);
  }
  return out;
}

std::string PauliSum::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += format_coeff(t.coeff);
    out += " * ";
    out += t.word.tokens();
  }
  return out;
}

PauliSum PauliSum::parse(std::string_view text, int n_qubits) {
  PauliSum out(n_qubits);
  if (text == "0") return out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(" + ", pos);
    const std::string_view piece =
        text.substr(pos, next == std::string_view::npos ? next : next - pos);
    const std::size_t star = piece.find('*');
    if (star == std::string_view::npos) {
      throw std::invalid_argument("Pauli term missing '*' separator");
    }
    std::string_view coeff_text = piece.substr(0, star);
    while (!coeff_text.empty() && coeff_text.back() == ' ') coeff_text.remove_suffix(1);
    out.add(parse_coeff(coeff_text),
            PauliWord::from_tokens(piece.substr(star + 1), n_qubits));
    if (next == std::string_view::npos) break;
    pos = next + 3;
  }
  return out;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("Pauli sums act on different qubit counts");
  }
  PauliSum out(a.n_qubits());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      const auto prod = multiply(ta.word, tb.word);
      out.add(ta.coeff * tb.coeff * prod.phase, prod.word);
    }
  }
  return out.simplified();
}

PauliSum operator+(PauliSum a, const PauliSum& b) {
  a += b;
  return a;
}

PauliSum operator*(cplx scale, PauliSum s) {
  s *= scale;
  return s;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  return (a * b + cplx{-1, 0} * (b * a)).simplified();
}

PauliSum anticommutator(const PauliSum& a, const PauliSum& b) {
  return (a * b + b * a).simplified();
}

}  // namespace qgf
