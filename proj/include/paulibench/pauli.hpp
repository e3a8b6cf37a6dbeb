// Copyright 2026 The paulibench developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paulibench/errors.hpp"

namespace paulibench {

/// Single-qubit Pauli letter. Numeric values give the canonical ordering
/// I < X < Y < Z used for deterministic iteration and tie-breaking.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_to_char(Pauli p) {
  constexpr char table[4] = {'I', 'X', 'Y', 'Z'};
  return table[static_cast<std::uint8_t>(p)];
}

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw InvalidArgument(std::string("invalid Pauli letter '") + c +
                            "' (expected one of I, X, Y, Z)");
  }
}

/// Word over {I, X, Y, Z} of fixed length n (the qubit count).
///
/// Letters are packed two bits per qubit so that covering tests and weight
/// counts reduce to a handful of word operations; these are the innermost
/// loops of hit counting and derandomization. Qubit 0 is the leftmost letter
/// of the text form ("XZ" has X on qubit 0).
class PauliString {
 public:
  PauliString() = default;

  PauliString(std::size_t n, Pauli fill)
      : n_(n), words_((n + kPerWord - 1) / kPerWord, 0) {
    if (fill != Pauli::I) {
      for (std::size_t i = 0; i < n; ++i) set_letter(i, fill);
    }
  }

  explicit PauliString(std::string_view text)
      : PauliString(text.size(), Pauli::I) {
    if (text.empty()) throw InvalidArgument("empty Pauli string");
    for (std::size_t i = 0; i < text.size(); ++i) {
      set_letter(i, pauli_from_char(text[i]));
    }
  }

  std::size_t size() const { return n_; }

  Pauli letter(std::size_t i) const {
    return static_cast<Pauli>((words_[i / kPerWord] >> (2 * (i % kPerWord))) & 3u);
  }

  void set_letter(std::size_t i, Pauli p) {
    if (i >= n_) throw InvalidArgument("qubit index out of range");
    std::uint64_t& w = words_[i / kPerWord];
    const unsigned shift = 2 * (i % kPerWord);
    w = (w & ~(std::uint64_t{3} << shift)) |
        (std::uint64_t{static_cast<std::uint8_t>(p)} << shift);
  }

  /// Number of non-identity letters.
  int weight() const {
    int w = 0;
    for (std::uint64_t word : words_) w += std::popcount(nonzero_lanes(word));
    return w;
  }

  /// 0-based indices of the non-identity letters.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> idx;
    idx.reserve(static_cast<std::size_t>(weight()));
    for (std::size_t i = 0; i < n_; ++i) {
      if (letter(i) != Pauli::I) idx.push_back(i);
    }
    return idx;
  }

  /// Support packed one bit per qubit (bit i of word i/64 set iff letter i != I).
  std::vector<std::uint64_t> support_mask() const {
    std::vector<std::uint64_t> mask((n_ + 63) / 64, 0);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const std::uint64_t half = compress_even_bits(nonzero_lanes(words_[w]));
      mask[w / 2] |= half << (32 * (w % 2));
    }
    return mask;
  }

  bool is_identity() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::string str() const {
    std::string s(n_, 'I');
    for (std::size_t i = 0; i < n_; ++i) s[i] = pauli_to_char(letter(i));
    return s;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  /// Lexicographic with I < X < Y < Z, leftmost letter most significant.
  friend std::strong_ordering operator<=>(const PauliString& a,
                                          const PauliString& b) {
    const std::size_t m = a.n_ < b.n_ ? a.n_ : b.n_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto la = static_cast<std::uint8_t>(a.letter(i));
      const auto lb = static_cast<std::uint8_t>(b.letter(i));
      if (la != lb) return la <=> lb;
    }
    return a.n_ <=> b.n_;
  }

  static constexpr std::size_t kPerWord = 32;

  /// One bit per 2-bit lane, set iff the lane is non-identity (low bit of lane).
  static std::uint64_t nonzero_lanes(std::uint64_t word) {
    constexpr std::uint64_t kLo = 0x5555555555555555ULL;
    return (word | (word >> 1)) & kLo;
  }

 private:
  /// Compact the even-indexed bits of x (a nonzero_lanes value) into the low
  /// 32 bits.
  static std::uint64_t compress_even_bits(std::uint64_t x) {
    x &= 0x5555555555555555ULL;
    x = (x | (x >> 1)) & 0x3333333333333333ULL;
    x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0FULL;
    x = (x | (x >> 4)) & 0x00FF00FF00FF00FFULL;
    x = (x | (x >> 8)) & 0x0000FFFF0000FFFFULL;
    x = (x | (x >> 16)) & 0x00000000FFFFFFFFULL;
    return x;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const {
    std::uint64_t h = 1469598103934665603ULL ^ p.size();
    for (std::uint64_t w : p.words()) {
      h ^= w;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// True iff every non-identity letter of `target` equals the corresponding
/// letter of `basis`.
inline bool covers(const PauliString& target, const PauliString& basis) {
  if (target.size() != basis.size()) {
    throw InvalidArgument("covers: length mismatch (" +
                          std::to_string(target.size()) + " vs " +
                          std::to_string(basis.size()) + ")");
  }
  const auto tw = target.words();
  const auto bw = basis.words();
  for (std::size_t i = 0; i < tw.size(); ++i) {
    const std::uint64_t nz = PauliString::nonzero_lanes(tw[i]);
    const std::uint64_t mask = nz | (nz << 1);
    if ((tw[i] ^ bw[i]) & mask) return false;
  }
  return true;
}

/// Full-weight Pauli word: a measurement basis, one letter in {X, Y, Z} per
/// qubit.
class MeasurementBasis {
 public:
  MeasurementBasis() = default;

  explicit MeasurementBasis(PauliString p) : pauli_(std::move(p)) {
    for (std::size_t i = 0; i < pauli_.size(); ++i) {
      if (pauli_.letter(i) == Pauli::I) {
        throw InvalidArgument("measurement basis contains identity letter at qubit " +
                              std::to_string(i));
      }
    }
  }

  explicit MeasurementBasis(std::string_view text)
      : MeasurementBasis(PauliString(text)) {}

  const PauliString& pauli() const { return pauli_; }
  std::size_t size() const { return pauli_.size(); }
  Pauli letter(std::size_t i) const { return pauli_.letter(i); }
  std::string str() const { return pauli_.str(); }

  friend bool operator==(const MeasurementBasis&, const MeasurementBasis&) = default;
  friend std::strong_ordering operator<=>(const MeasurementBasis& a,
                                          const MeasurementBasis& b) {
    return a.pauli_ <=> b.pauli_;
  }

 private:
  PauliString pauli_;
};

struct MeasurementBasisHash {
  std::size_t operator()(const MeasurementBasis& b) const {
    return PauliStringHash{}(b.pauli());
  }
};

/// Length-n binary measurement record, one bit per qubit (bit i = qubit i).
class Outcome {
 public:
  Outcome() = default;
  explicit Outcome(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  /// For n <= 64, builds the outcome whose bit i equals bit i of `index`.
  static Outcome from_index(std::size_t n, std::uint64_t index) {
    if (n > 64) throw InvalidArgument("from_index supports at most 64 qubits");
    Outcome y(n);
    y.words_[0] = n == 64 ? index : (index & ((std::uint64_t{1} << n) - 1));
    return y;
  }

  static Outcome from_string(std::string_view bits) {
    Outcome y(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        y.set_bit(i, true);
      } else if (bits[i] != '0') {
        throw InvalidArgument("invalid outcome bit (expected 0 or 1)");
      }
    }
    return y;
  }

  std::size_t size() const { return n_; }

  bool bit(std::size_t i) const {
    return (words_[i / 64] >> (i % 64)) & 1u;
  }

  void set_bit(std::size_t i, bool v) {
    if (i >= n_) throw InvalidArgument("outcome bit index out of range");
    const std::uint64_t m = std::uint64_t{1} << (i % 64);
    if (v) {
      words_[i / 64] |= m;
    } else {
      words_[i / 64] &= ~m;
    }
  }

  std::uint64_t to_index() const {
    if (n_ > 64) throw InvalidArgument("to_index supports at most 64 qubits");
    return words_.empty() ? 0 : words_[0];
  }

  std::string str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
      if (bit(i)) s[i] = '1';
    }
    return s;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const Outcome& a, const Outcome& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Product of (-1)^{y_i} over the 0-based indices in `subset`; +1 for the
/// empty subset.
inline int eigenvalue_product(const Outcome& y, std::span<const std::size_t> subset) {
  int parity = 0;
  for (std::size_t i : subset) {
    if (i >= y.size()) throw InvalidArgument("eigenvalue_product: index out of range");
    parity ^= y.bit(i) ? 1 : 0;
  }
  return parity ? -1 : +1;
}

/// Same as above with the subset given as a packed bit mask (fast path).
inline int eigenvalue_product_masked(const Outcome& y,
                                     std::span<const std::uint64_t> support_mask) {
  int parity = 0;
  const auto yw = y.words();
  for (std::size_t i = 0; i < support_mask.size() && i < yw.size(); ++i) {
    parity ^= std::popcount(yw[i] & support_mask[i]) & 1;
  }
  return parity ? -1 : +1;
}

}  // namespace paulibench
