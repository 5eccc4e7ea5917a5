#pragma once

#include <compare>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace latcliff::opcalc {

/// Exact rational scalar.  Coefficients in the rewrite system are small
/// signed sums, so 64-bit components are ample.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
  friend Rational operator-(Rational a) { return Rational(-a.num, a.den); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

/// Decorated free function symbol: name, argument offset in units of h, and
/// the parity of applied main involutions.
struct FunFactor {
  std::string name;
  std::vector<int> shift;
  int inv = 0;

  friend auto operator<=>(const FunFactor&, const FunFactor&) = default;
};

/// One Witt letter e_j^+ (kind +1) or e_j^- (kind -1).
struct WittLetter {
  int axis = 1;
  int kind = +1;

  friend auto operator<=>(const WittLetter&, const WittLetter&) = default;
};

/// Normal-ordered term: function word (left, order-preserving), Witt word
/// (right), and a power of the formal mesh width h.
struct Term {
  std::vector<WittLetter> witt;
  std::vector<FunFactor> fun;
  int hpow = 0;

  friend auto operator<=>(const Term&, const Term&) = default;
};

namespace detail {

/// Normal order: axes ascending; within an axis at most one e_j^- followed
/// by at most one e_j^+.
inline bool pair_in_order(const WittLetter& a, const WittLetter& b) {
  if (a.axis < b.axis) return true;
  if (a.axis > b.axis) return false;
  return a.kind == -1 && b.kind == +1;
}

/// Rewrites a Witt word to normal form.  Returns the resulting words with
/// their signs; a word may vanish (e_j^s e_j^s = 0) or split via
/// e_j^+ e_j^- -> 1 - e_j^- e_j^+.
inline std::vector<std::pair<std::vector<WittLetter>, int>> normal_order_witt(
    std::vector<WittLetter> word, int sign) {
  std::vector<std::pair<std::vector<WittLetter>, int>> out;
  std::vector<std::pair<std::vector<WittLetter>, int>> work;
  work.emplace_back(std::move(word), sign);
  while (!work.empty()) {
    auto [w, s] = std::move(work.back());
    work.pop_back();
    bool reduced = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const WittLetter a = w[i], b = w[i + 1];
      if (pair_in_order(a, b)) continue;
      reduced = true;
      if (a.axis == b.axis) {
        if (a.kind == b.kind) break;  // nilpotent pair: term vanishes
        // e_j^+ e_j^- = 1 - e_j^- e_j^+
        std::vector<WittLetter> dropped = w;
        dropped.erase(dropped.begin() + i, dropped.begin() + i + 2);
        work.emplace_back(std::move(dropped), s);
        std::vector<WittLetter> swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        work.emplace_back(std::move(swapped), -s);
      } else {
        // distinct axes anticommute
        std::vector<WittLetter> swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        work.emplace_back(std::move(swapped), -s);
      }
      break;
    }
    if (!reduced) out.emplace_back(std::move(w), s);
  }
  return out;
}

/// Moving a Witt letter left-to-right past a function factor:
/// e_j^+ F = F[-e_j]' e_j^+ and e_j^- F = F[+e_j]' e_j^-.
inline void decorate_past(FunFactor& f, const WittLetter& l) {
  f.shift[l.axis - 1] += (l.kind == +1) ? -1 : +1;
  f.inv ^= 1;
}

}  // namespace detail

/// Formal sum of normal-ordered terms over rational coefficients.
/// Two expressions are equal iff their term maps coincide.
class OperatorExpr {
 public:
  explicit OperatorExpr(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("OperatorExpr: dimension must be >= 1");
  }

  static OperatorExpr zero(int n) { return OperatorExpr(n); }

  static OperatorExpr one(int n) {
    OperatorExpr e(n);
    e.add_term(Term{}, Rational(1));
    return e;
  }

  static OperatorExpr fun(int n, std::string name, std::vector<int> shift = {}, int inv = 0) {
    if (shift.empty()) shift.assign(n, 0);
    if (static_cast<int>(shift.size()) != n)
      throw std::invalid_argument("fun: shift dimension mismatch");
    OperatorExpr e(n);
    Term t;
    t.fun.push_back(FunFactor{std::move(name), std::move(shift), inv & 1});
    e.add_term(std::move(t), Rational(1));
    return e;
  }

  static OperatorExpr fun_word(int n, const std::vector<std::string>& names) {
    OperatorExpr e(n);
    Term t;
    for (const auto& nm : names) t.fun.push_back(FunFactor{nm, std::vector<int>(n, 0), 0});
    e.add_term(std::move(t), Rational(1));
    return e;
  }

  static OperatorExpr witt(int n, int axis, int kind) {
    if (axis < 1 || axis > n) throw std::invalid_argument("witt: axis out of range");
    OperatorExpr e(n);
    Term t;
    t.witt.push_back(WittLetter{axis, kind});
    e.add_term(std::move(t), Rational(1));
    return e;
  }

  int dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Term, Rational>& terms() const { return terms_; }

  void add_term(Term t, Rational c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(t), c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  OperatorExpr& operator+=(const OperatorExpr& o) {
    check_dim(o);
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
  }
  OperatorExpr& operator-=(const OperatorExpr& o) {
    check_dim(o);
    for (const auto& [t, c] : o.terms_) add_term(t, -c);
    return *this;
  }
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }

  OperatorExpr scaled(Rational c) const {
    OperatorExpr out(n_);
    for (const auto& [t, v] : terms_) out.add_term(t, v * c);
    return out;
  }

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Main involution applied to every function factor, distributing
  /// factor-wise without reversal.
  OperatorExpr involuted() const {
    OperatorExpr out(n_);
    for (const auto& [t, c] : terms_) {
      Term t2 = t;
      for (auto& f : t2.fun) f.inv ^= 1;
      out.add_term(std::move(t2), c);
    }
    return out;
  }

  /// Finite difference d_h^{(dir) j} acting on the function word of every
  /// term; the shift applies to all factors at once (telescoped product
  /// rule) and the coefficient picks up 1/h.
  OperatorExpr diff(int axis, int dir) const {
    if (axis < 1 || axis > n_) throw std::invalid_argument("diff: axis out of range");
    OperatorExpr out(n_);
    for (const auto& [t, c] : terms_) {
      Term shifted = t;
      for (auto& f : shifted.fun) f.shift[axis - 1] += dir;
      shifted.hpow -= 1;
      Term orig = t;
      orig.hpow -= 1;
      if (dir == +1) {
        out.add_term(std::move(shifted), c);
        out.add_term(std::move(orig), -c);
      } else {
        out.add_term(std::move(orig), c);
        out.add_term(std::move(shifted), -c);
      }
    }
    return out;
  }

  /// Left multiplication by a Witt letter: the letter moves right past every
  /// function factor (decorating it) and is prepended to the Witt word.
  OperatorExpr left_witt(const WittLetter& l) const {
    OperatorExpr out(n_);
    for (const auto& [t, c] : terms_) {
      Term t2 = t;
      for (auto& f : t2.fun) detail::decorate_past(f, l);
      std::vector<WittLetter> word;
      word.reserve(t2.witt.size() + 1);
      word.push_back(l);
      word.insert(word.end(), t2.witt.begin(), t2.witt.end());
      for (auto& [w, s] : detail::normal_order_witt(std::move(word), 1)) {
        Term t3 = t2;
        t3.witt = std::move(w);
        out.add_term(std::move(t3), c * Rational(s));
      }
    }
    return out;
  }

  void check_dim(const OperatorExpr& o) const {
    if (n_ != o.n_) throw std::invalid_argument("dimension mismatch");
  }

  /// Plain-text s-expression rendering, used in mismatch certificates.
  std::string sexpr() const {
    if (terms_.empty()) return "(sum)";
    std::ostringstream os;
    os << "(sum";
    for (const auto& [t, c] : terms_) {
      os << "\n  (term (coeff " << c.str() << ")";
      if (t.hpow != 0) os << " (h " << t.hpow << ")";
      for (const auto& f : t.fun) {
        os << " (" << f.name;
        bool nonzero = false;
        for (int v : f.shift) nonzero |= (v != 0);
        if (nonzero) {
          os << " (shift";
          for (int v : f.shift) os << " " << v;
          os << ")";
        }
        if (f.inv) os << " '";
        os << ")";
      }
      if (!t.witt.empty()) {
        os << " (witt";
        for (const auto& l : t.witt) os << " e" << l.axis << (l.kind > 0 ? "+" : "-");
        os << ")";
      }
      os << ")";
    }
    os << ")";
    return os.str();
  }

 private:
  int n_;
  std::map<Term, Rational> terms_;
};

/// Product of two expressions, rewritten to normal form: Witt letters of A
/// move right past the function factors of B, then the concatenated Witt
/// words are normal ordered and like terms collected.
inline OperatorExpr compose(const OperatorExpr& a, const OperatorExpr& b) {
  a.check_dim(b);
  OperatorExpr out(a.dim());
  for (const auto& [ta, ca] : a.terms()) {
    for (const auto& [tb, cb] : b.terms()) {
      Term merged;
      merged.hpow = ta.hpow + tb.hpow;
      merged.fun = ta.fun;
      std::vector<FunFactor> right = tb.fun;
      for (auto& f : right)
        for (const auto& l : ta.witt) detail::decorate_past(f, l);
      merged.fun.insert(merged.fun.end(), right.begin(), right.end());
      std::vector<WittLetter> word = ta.witt;
      word.insert(word.end(), tb.witt.begin(), tb.witt.end());
      const Rational c = ca * cb;
      for (auto& [w, s] : detail::normal_order_witt(std::move(word), 1)) {
        Term t = merged;
        t.witt = std::move(w);
        out.add_term(std::move(t), c * Rational(s));
      }
    }
  }
  return out;
}

/// The multivector difference operator sum_j e_j^{(kind)} d_h^{(kind) j}
/// applied to an expression.
inline OperatorExpr apply_witt_diff(const OperatorExpr& e, int kind) {
  OperatorExpr out(e.dim());
  for (int j = 1; j <= e.dim(); ++j)
    out += e.diff(j, kind).left_witt(WittLetter{j, kind});
  return out;
}

struct CheckResult {
  bool equal = false;
  std::string lhs_sexpr;
  std::string rhs_sexpr;
};

/// Generalized Leibniz rule d_h^{+-}(f g) = (d_h^{+-} f) g + f' (d_h^{+-} g)
/// as a normal-form identity.  mutate_rhs drops the involution on f,
/// which must break the identity.
inline CheckResult check_leibniz(int n, int kind, bool mutate_rhs = false) {
  const OperatorExpr fg = OperatorExpr::fun_word(n, {"f", "g"});
  const OperatorExpr f = OperatorExpr::fun(n, "f");
  const OperatorExpr g = OperatorExpr::fun(n, "g");
  const OperatorExpr lhs = apply_witt_diff(fg, kind);
  const OperatorExpr f_left = mutate_rhs ? f : f.involuted();
  const OperatorExpr rhs = compose(apply_witt_diff(f, kind), g) + compose(f_left, apply_witt_diff(g, kind));
  return {lhs == rhs, lhs.sexpr(), rhs.sexpr()};
}

/// (d_h^{+-})^2 f = 0 as a normal-form identity.
inline CheckResult check_nilpotent(int n, int kind) {
  const OperatorExpr f = OperatorExpr::fun(n, "f");
  const OperatorExpr sq = apply_witt_diff(apply_witt_diff(f, kind), kind);
  return {sq.is_zero(), sq.sexpr(), OperatorExpr::zero(n).sexpr()};
}

/// d_h^+ d_h^- + d_h^- d_h^+ applied to f equals the star Laplacian
/// sum_j (f[+e_j] + f[-e_j] - 2f) / h^2.  mutate keeps only half the sum.
inline CheckResult check_laplacian_factorization(int n, bool mutate = false) {
  const OperatorExpr f = OperatorExpr::fun(n, "f");
  OperatorExpr lhs = apply_witt_diff(apply_witt_diff(f, -1), +1);
  if (!mutate) lhs += apply_witt_diff(apply_witt_diff(f, +1), -1);
  OperatorExpr rhs(n);
  for (int j = 1; j <= n; ++j) {
    std::vector<int> up(n, 0), down(n, 0);
    up[j - 1] = 1;
    down[j - 1] = -1;
    Term plus;
    plus.fun.push_back(FunFactor{"f", up, 0});
    plus.hpow = -2;
    Term minus;
    minus.fun.push_back(FunFactor{"f", down, 0});
    minus.hpow = -2;
    Term center;
    center.fun.push_back(FunFactor{"f", std::vector<int>(n, 0), 0});
    center.hpow = -2;
    rhs.add_term(std::move(plus), Rational(1));
    rhs.add_term(std::move(minus), Rational(1));
    rhs.add_term(std::move(center), Rational(-2));
  }
  return {lhs == rhs, lhs.sexpr(), rhs.sexpr()};
}

}  // namespace latcliff::opcalc
