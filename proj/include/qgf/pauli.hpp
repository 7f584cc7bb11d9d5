#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qgf {

using cplx = std::complex<double>;

enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(PauliOp op);
PauliOp pauli_from_char(char c);

/// An n-qubit Pauli word stored as X/Z bit masks (two bits per qubit).
/// Supports up to 64 qubits; multiplication and hashing are O(n/64).
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(int n_qubits);
  /// Builds from a letter string with qubit 0 first, e.g. "XIZY".
  explicit PauliWord(std::string_view letters);

  static PauliWord single(int n_qubits, int qubit, PauliOp op);

  int n_qubits() const { return n_; }
  PauliOp op(int qubit) const;
  PauliWord& set(int qubit, PauliOp op);

  /// Number of non-identity positions.
  int weight() const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  std::string letters() const;
  /// Token form used in files and logs: "X0 Z1 Y3"; the identity prints as "I".
  std::string tokens() const;
  static PauliWord from_tokens(std::string_view tokens, int n_qubits);

  bool operator==(const PauliWord& other) const = default;
  /// Lexicographic order on symbols (I < X < Y < Z), qubit 0 compared first.
  bool operator<(const PauliWord& other) const;

 private:
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int n_ = 0;
};

struct WordProduct {
  cplx phase;  // one of {1, i, -1, -i}
  PauliWord word;
};

/// Operator product a*b with its group phase.
WordProduct multiply(const PauliWord& a, const PauliWord& b);

/// True iff the words commute (even number of anticommuting positions).
bool commutes(const PauliWord& a, const PauliWord& b);

struct PauliTerm {
  cplx coeff;
  PauliWord word;
};

/// A complex-weighted sum of Pauli words on a fixed qubit count.
/// Canonical form: unique words in lexicographic order, negligible
/// coefficients dropped relative to the largest one.
class PauliSum {
 public:
  /// Relative coefficient magnitude below which terms are dropped.
  static constexpr double kDedupTol = 1e-14;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}
  PauliSum(int n_qubits, std::vector<PauliTerm> terms);

  int n_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::span<const PauliTerm> terms() const { return terms_; }

  PauliSum& add(cplx coeff, const PauliWord& word);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(cplx scale);

  /// Merges like terms, drops negligible ones, sorts deterministically.
  PauliSum simplified() const;

  /// Hermitian conjugate (coefficients conjugated, words unchanged).
  PauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;

  /// Coefficient of the identity word, or zero when absent.
  cplx identity_coeff() const;
  /// Copy with the identity term removed.
  PauliSum without_identity() const;

  /// Textual form, one term per " + "-joined token group: "c * X0 Z1".
  std::string str() const;
  static PauliSum parse(std::string_view text, int n_qubits);

  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator+(PauliSum a, const PauliSum& b);
  friend PauliSum operator*(cplx scale, PauliSum s);

 private:
  std::vector<PauliTerm> terms_;
  int n_ = 0;
};

/// Commutator [a, b] in simplified form.
PauliSum commutator(const PauliSum& a, const PauliSum& b);
/// Anticommutator {a, b} in simplified form.
PauliSum anticommutator(const PauliSum& a, const PauliSum& b);

}  // namespace qgf
