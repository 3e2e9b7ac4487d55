#include "sigtaylor/words.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace sigtaylor {

Word Word::from_letters(const std::vector<int>& letters) {
  if (letters.size() > static_cast<std::size_t>(kMaxLength)) throw std::length_error("word too long");
  Word w;
  for (int l : letters) {
    if (l != 0 && l != 1) throw std::invalid_argument("letters must be 0 or 1");
    w = w.push_back(l);
  }
  return w;
}

Word Word::parse(std::string_view text) {
  if (text == "e" || text.empty()) return {};
  std::vector<int> letters;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument(fmt::format("invalid word '{}'", text));
    letters.push_back(c - '0');
  }
  return from_letters(letters);
}

Word Word::zeros(int k) { return Word(0U, k); }

Word Word::ones(int k) { return Word(k == 0 ? 0U : ((1U << k) - 1U), k); }

Word Word::from_rank(std::uint64_t rank) {
  int len = 0;
  while (((std::uint64_t{1} << (len + 1)) - 1) <= rank) ++len;
  return Word(static_cast<std::uint32_t>(rank - ((std::uint64_t{1} << len) - 1)), len);
}

int Word::count01() const {
  int n = 0;
  for (int i = 0; i + 1 < len_; ++i)
    if (letter(i) == 0 && letter(i + 1) == 1) ++n;
  return n;
}

Word Word::push_back(int l) const {
  if (len_ >= kMaxLength) throw std::length_error("word too long");
  return Word((bits_ << 1) | static_cast<std::uint32_t>(l), len_ + 1);
}

Word Word::push_front(int l) const {
  if (len_ >= kMaxLength) throw std::length_error("word too long");
  return Word(bits_ | (static_cast<std::uint32_t>(l) << len_), len_ + 1);
}

Word Word::prefix(int n) const {
  if (n < 0 || n > len_) throw std::out_of_range("prefix length");
  return Word(n == 0 ? 0U : bits_ >> (len_ - n), n);
}

Word Word::suffix(int n) const {
  if (n < 0 || n > len_) throw std::out_of_range("suffix length");
  return Word(n == 0 ? 0U : bits_ & ((1U << n) - 1U), n);
}

bool Word::ends_with(const Word& tail) const { return tail.len_ <= len_ && suffix(tail.len_) == tail; }

std::string Word::str() const {
  if (len_ == 0) return "e";
  std::string s;
  for (int i = 0; i < len_; ++i) s.push_back(static_cast<char>('0' + letter(i)));
  return s;
}

Word operator+(const Word& a, const Word& b) {
  if (a.len_ + b.len_ > Word::kMaxLength) throw std::length_error("word too long");
  return Word((a.bits_ << b.len_) | b.bits_, a.len_ + b.len_);
}

std::size_t word_count(int max_len) { return (std::size_t{1} << (max_len + 1)) - 1; }

std::vector<Word> enumerate_words(int max_len) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  std::vector<Word> out;
  out.reserve(word_count(max_len));
  for (std::uint64_t r = 0; r < word_count(max_len); ++r) out.push_back(Word::from_rank(r));
  return out;
}

std::vector<Word> words_with_weight(int k) {
  if (k < 0) throw std::invalid_argument("weight must be >= 0");
  std::vector<Word> out;
  for (int len = (k + 1) / 2; len <= k; ++len) {
    const int ones = 2 * len - k;
    for (std::uint32_t bits = 0; bits < (1U << len); ++bits) {
      if (__builtin_popcount(bits) != ones) continue;
      out.push_back(Word::from_rank(((std::uint64_t{1} << len) - 1) + bits));
    }
  }
  return out;
}

// ---- TPoly ----

TPoly TPoly::monomial(int power, double c) {
  TPoly p;
  p.coef_.assign(static_cast<std::size_t>(power) + 1, 0.0);
  p.coef_.back() = c;
  p.trim();
  return p;
}

double TPoly::coefficient(int power) const {
  return power < static_cast<int>(coef_.size()) && power >= 0 ? coef_[static_cast<std::size_t>(power)] : 0.0;
}

double TPoly::operator()(double horizon) const {
  double acc = 0.0;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * horizon + *it;
  return acc;
}

TPoly& TPoly::operator+=(const TPoly& o) {
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), 0.0);
  for (std::size_t i = 0; i < o.coef_.size(); ++i) coef_[i] += o.coef_[i];
  trim();
  return *this;
}

TPoly& TPoly::operator*=(double s) {
  for (auto& c : coef_) c *= s;
  trim();
  return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  TPoly r;
  r.coef_.assign(a.coef_.size() + b.coef_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coef_.size(); ++i)
    for (std::size_t j = 0; j < b.coef_.size(); ++j) r.coef_[i + j] += a.coef_[i] * b.coef_[j];
  r.trim();
  return r;
}

void TPoly::trim() {
  while (!coef_.empty() && coef_.back() == 0.0) coef_.pop_back();
}

std::string TPoly::str() const {
  if (coef_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == 0.0) continue;
    if (!s.empty()) s += " + ";
    s += fmt::format("{}", coef_[i]);
    if (i == 1) s += "*T";
    if (i > 1) s += fmt::format("*T^{}", i);
  }
  return s;
}

// ---- WordPoly ----

WordPoly::WordPoly(const Word& w, double c) { add(w, c); }

void WordPoly::add(const Word& w, const TPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WordPoly& WordPoly::operator+=(const WordPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

WordPoly& WordPoly::operator-=(const WordPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, -1.0 * c);
  return *this;
}

WordPoly& WordPoly::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

WordPoly WordPoly::times_horizon(int power) const {
  WordPoly r;
  const TPoly tp = TPoly::monomial(power, 1.0);
  for (const auto& [w, c] : terms_) r.add(w, c * tp);
  return r;
}

WordPoly WordPoly::append(int letter) const {
  WordPoly r;
  for (const auto& [w, c] : terms_) r.add(w.push_back(letter), c);
  return r;
}

TPoly WordPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? TPoly{} : it->second;
}

int WordPoly::max_length() const {
  int m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.size());
  return m;
}

double WordPoly::evaluate(const std::function<double(const Word&)>& coord, double horizon) const {
  double acc = 0.0;
  for (const auto& [w, c] : terms_) acc += c(horizon) * coord(w);
  return acc;
}

std::string WordPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << w.str();
  }
  return os.str();
}

// ---- shuffle and basis reduction ----

WordPoly shuffle(const Word& u, const Word& v) {
  if (u.empty()) return WordPoly(v);
  if (v.empty()) return WordPoly(u);
  WordPoly r = shuffle(u.drop_back(), v).append(u.back());
  r += shuffle(u, v.drop_back()).append(v.back());
  return r;
}

WordPoly shuffle(const WordPoly& a, const WordPoly& b) {
  WordPoly r;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) {
      const WordPoly uv = shuffle(u, v);
      for (const auto& [w, m] : uv.terms()) r.add(w, cu * cv * m);
    }
  return r;
}

namespace {

WordPoly reduce_rec(const Word& a, std::map<Word, WordPoly>& memo) {
  if (a.empty() || a.back() == 1) return WordPoly(a);
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  int trailing = 0;
  while (trailing < a.size() && a.letter(a.size() - 1 - trailing) == 0) ++trailing;
  const Word c = a.drop_back();
  WordPoly out = reduce_rec(c, memo).times_horizon(1);
  const WordPoly inserted = shuffle(Word::zeros(1), c);
  for (const auto& [w, mult] : inserted.terms()) {
    if (w == a) continue;
    WordPoly part = reduce_rec(w, memo);
    for (const auto& [bw, bc] : part.terms()) out.add(bw, -1.0 * (mult * bc));
  }
  out *= 1.0 / static_cast<double>(trailing);
  memo.emplace(a, out);
  return out;
}

}  // namespace

WordPoly basis_reduce(const Word& a) {
  std::map<Word, WordPoly> memo;
  return reduce_rec(a, memo);
}

WordPoly basis_reduce(const WordPoly& p) {
  std::map<Word, WordPoly> memo;
  WordPoly out;
  for (const auto& [w, c] : p.terms()) {
    const WordPoly r = reduce_rec(w, memo);
    for (const auto& [bw, bc] : r.terms()) out.add(bw, c * bc);
  }
  return out;
}

}  // namespace sigtaylor
