#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sigtaylor {

/// A word over {0, 1}: letter 0 integrates against time, letter 1 against the path.
///
/// Stored as a bit pattern with the first letter in the most significant used
/// bit, so the graded lexicographic rank (0 < 1, shorter words first) is
/// simply 2^len - 1 + bits.
class Word {
 public:
  static constexpr int kMaxLength = 30;

  Word() = default;
  static Word from_letters(const std::vector<int>& letters);
  /// Parses "0110"; "e" (or "") is the empty word.
  static Word parse(std::string_view text);
  static Word zeros(int k);
  static Word ones(int k);
  static Word from_rank(std::uint64_t rank);

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }
  int letter(int i) const { return static_cast<int>((bits_ >> (len_ - 1 - i)) & 1U); }
  int back() const { return static_cast<int>(bits_ & 1U); }
  int count0() const { return len_ - count1(); }
  int count1() const { return __builtin_popcount(bits_); }
  /// 2|a|_0 + |a|_1
  int weighted_length() const { return 2 * count0() + count1(); }
  /// number of occurrences of the factor "01"
  int count01() const;

  std::uint64_t rank() const { return (std::uint64_t{1} << len_) - 1 + bits_; }
  std::uint32_t bits() const { return bits_; }

  Word push_back(int letter) const;
  Word push_front(int letter) const;
  /// first n letters
  Word prefix(int n) const;
  /// last n letters
  Word suffix(int n) const;
  Word drop_back(int n = 1) const { return prefix(len_ - n); }
  bool ends_with(const Word& tail) const;

  std::string str() const;

  friend Word operator+(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) { return a.rank() <=> b.rank(); }

 private:
  Word(std::uint32_t bits, int len) : bits_(bits), len_(len) {}
  std::uint32_t bits_ = 0;
  int len_ = 0;
};

/// All words of length <= max_len in graded lexicographic order (empty word first).
std::vector<Word> enumerate_words(int max_len);
/// Number of words of length <= max_len: 2^{max_len+1} - 1.
std::size_t word_count(int max_len);
/// All words with 2|a|_0 + |a|_1 == k, in graded lexicographic order.
std::vector<Word> words_with_weight(int k);

/// Polynomial in the horizon symbol T with real coefficients, indexed by power.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(double c) : coef_{c} { trim(); }
  static TPoly monomial(int power, double c);

  bool is_zero() const { return coef_.empty(); }
  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  double coefficient(int power) const;
  double operator()(double horizon) const;

  TPoly& operator+=(const TPoly& o);
  TPoly& operator*=(double s);
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  friend TPoly operator*(double s, TPoly p) { return p *= s; }
  friend bool operator==(const TPoly&, const TPoly&) = default;

  std::string str() const;

 private:
  void trim();
  std::vector<double> coef_;
};

/// Formal linear combination of words with T-polynomial coefficients.
class WordPoly {
 public:
  WordPoly() = default;
  explicit WordPoly(const Word& w, double c = 1.0);

  void add(const Word& w, const TPoly& c);
  void add(const Word& w, double c) { add(w, TPoly(c)); }

  WordPoly& operator+=(const WordPoly& o);
  WordPoly& operator-=(const WordPoly& o);
  WordPoly& operator*=(double s);
  /// multiply every coefficient by T^power
  WordPoly times_horizon(int power = 1) const;
  /// every word w becomes w + letter
  WordPoly append(int letter) const;
  friend WordPoly operator+(WordPoly a, const WordPoly& b) { return a += b; }
  friend WordPoly operator-(WordPoly a, const WordPoly& b) { return a -= b; }
  friend WordPoly operator*(double s, WordPoly p) { return p *= s; }
  friend bool operator==(const WordPoly&, const WordPoly&) = default;

  const std::map<Word, TPoly>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  /// coefficient of w (zero polynomial if absent)
  TPoly coefficient(const Word& w) const;
  int max_length() const;

  /// sum_w c_w(T) * coord(w)
  double evaluate(const std::function<double(const Word&)>& coord, double horizon) const;

  std::string str() const;

 private:
  std::map<Word, TPoly> terms_;
};

/// Shuffle product with integer multiplicities.
WordPoly shuffle(const Word& u, const Word& v);
/// Bilinear extension of the shuffle product.
WordPoly shuffle(const WordPoly& a, const WordPoly& b);

/// Rewrites S_a on paths of length exactly T in the basis {empty} U {b1}.
///
/// Words ending in 1 (and the empty word) are returned unchanged. For
/// a = b 0^{m+1} with b ending in 1 (or empty) the identity
///   T * S_{b0^m} = sum over 0 ⧢ b0^m = (m+1) S_a + (words with m trailing zeros)
/// peels one trailing zero; recursion on the number of trailing zeros terminates.
WordPoly basis_reduce(const Word& a);
WordPoly basis_reduce(const WordPoly& p);

}  // namespace sigtaylor
