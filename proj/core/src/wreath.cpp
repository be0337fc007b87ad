#include "thompson/wreath.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>

#include "thompson/error.hpp"

namespace thompson {

WreathElement::WreathElement(std::int64_t shift, std::map<std::int64_t, std::int64_t> coeffs)
    : shift_(shift), coeffs_(std::move(coeffs)) {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0; });
}

WreathElement WreathElement::a() { return WreathElement(1, {}); }
WreathElement WreathElement::b() { return WreathElement(0, {{0, 1}}); }
WreathElement WreathElement::b_at(std::int64_t k, std::int64_t exponent) { return WreathElement(0, {{k, exponent}}); }
WreathElement WreathElement::a_power(std::int64_t m) { return WreathElement(m, {}); }

std::string WreathElement::to_string() const {
  std::ostringstream os;
  os << "a^" << shift_ << " | {";
  bool first = true;
  for (const auto& [k, e] : coeffs_) {
    if (!first) os << ", ";
    first = false;
    os << k << ": " << e;
  }
  os << "}";
  return os.str();
}

WreathElement w_multiply(const WreathElement& u, const WreathElement& v) {
  // (h1 a^m1)(h2 a^m2) = h1 (a^m1 h2 a^-m1) a^(m1+m2), and a^m b_k a^-m = b_{k-m}.
  std::map<std::int64_t, std::int64_t> coeffs = u.coeffs();
  for (const auto& [k, e] : v.coeffs()) coeffs[k - u.shift()] += e;
  return WreathElement(u.shift() + v.shift(), std::move(coeffs));
}

WreathElement w_inverse(const WreathElement& u) {
  // (h a^m)^-1 = (a^-m h^-1 a^m) a^-m.
  std::map<std::int64_t, std::int64_t> coeffs;
  for (const auto& [k, e] : u.coeffs()) coeffs[k + u.shift()] = -e;
  return WreathElement(-u.shift(), std::move(coeffs));
}

WreathElement w_power(const WreathElement& u, std::int64_t m) {
  WreathElement base = m < 0 ? w_inverse(u) : u;
  WreathElement out;
  for (std::int64_t i = 0; i < std::abs(m); ++i) out = w_multiply(out, base);
  return out;
}

WreathElement w_commutator(const WreathElement& u, const WreathElement& v) {
  return w_multiply(w_multiply(w_inverse(u), w_inverse(v)), w_multiply(u, v));
}

namespace {

class WordLexer {
 public:
  explicit WordLexer(std::string_view text) : text_(text) {}

  bool done() {
    skip();
    return pos_ >= text_.size();
  }

  /// Next letter with its exponent.
  std::pair<char, std::int64_t> next() {
    skip();
    const std::size_t start = pos_;
    char letter = text_[pos_++];
    std::int64_t exponent = 1;
    if (letter == 'A' || letter == 'B') {
      letter = static_cast<char>(std::tolower(letter));
      exponent = -1;
    } else if (letter != 'a' && letter != 'b') {
      throw SyntaxError("unexpected character in word", start);
    }
    if (text_.substr(pos_, 5) == "⁻¹") {  // ⁻¹
      pos_ += 5;
      return {letter, -exponent};
    }
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      const bool braced = pos_ < text_.size() && text_[pos_] == '{';
      if (braced) ++pos_;
      const std::size_t num_start = pos_;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string digits(text_.substr(num_start, pos_ - num_start));
      if (digits.empty() || digits == "-" || digits == "+") throw SyntaxError("missing exponent", num_start);
      exponent *= std::stoll(digits);
      if (braced) {
        if (pos_ >= text_.size() || text_[pos_] != '}') throw SyntaxError("missing '}'", pos_);
        ++pos_;
      }
    }
    return {letter, exponent};
  }

 private:
  void skip() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*' ||
                                   text_[pos_] == '.')) {
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

WreathElement w_from_word(std::string_view word) {
  WordLexer lexer(word);
  WreathElement out;
  while (!lexer.done()) {
    const auto [letter, exponent] = lexer.next();
    const WreathElement g = letter == 'a' ? WreathElement::a() : WreathElement::b();
    out = w_multiply(out, w_power(g, exponent));
  }
  return out;
}

WreathElement w_parse_normal_form(std::string_view text) {
  const auto bar = text.find('|');
  const auto caret = text.find('^');
  if (bar == std::string_view::npos || caret == std::string_view::npos || caret > bar) {
    throw SyntaxError("expected 'a^m | {k: e, ...}'", 0);
  }
  std::int64_t shift = 0;
  try {
    shift = std::stoll(std::string(text.substr(caret + 1, bar - caret - 1)));
  } catch (const std::exception&) {
    throw SyntaxError("bad shift", caret + 1);
  }
  const auto open = text.find('{', bar);
  const auto close = text.find('}', bar);
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw SyntaxError("expected '{...}'", bar);
  }
  std::map<std::int64_t, std::int64_t> coeffs;
  std::string body(text.substr(open + 1, close - open - 1));
  std::istringstream in(body);
  std::string entry;
  while (std::getline(in, entry, ',')) {
    if (entry.find_first_not_of(" \t") == std::string::npos) continue;
    const auto colon = entry.find(':');
    if (colon == std::string::npos) throw SyntaxError("expected 'k: e'", open);
    try {
      coeffs[std::stoll(entry.substr(0, colon))] += std::stoll(entry.substr(colon + 1));
    } catch (const std::exception&) {
      throw SyntaxError("bad coefficient entry '" + entry + "'", open);
    }
  }
  return WreathElement(shift, std::move(coeffs));
}

PLMap embed(const WreathElement& u, const Generators& gens) {
  PLMap out = identity(gens.context());
  for (const auto& [k, e] : u.coeffs()) out = compose(out, power(gens.b_conjugate(k), e));
  if (u.shift() != 0) out = compose(out, gens.a_power(u.shift()));
  return out;
}

std::optional<WreathElement> wreath_decompose(const PLMap& x, const Generators& gens) {
  if (!(x.context() == gens.context())) throw ContextMismatch();
  const GroupContext& ctx = gens.context();
  const Rational& alpha0 = gens.alpha0();

  // x = h a^m with h fixing every alpha_k, so (alpha0)x = alpha_m.
  const Rational target = evaluate(x, alpha0);
  std::int64_t m = 0;
  if (alpha0 < target) {
    while (gens.alpha(m) < target) ++m;
  } else {
    while (target < gens.alpha(m)) --m;
  }
  if (!(gens.alpha(m) == target)) return std::nullopt;

  const PLMap h = compose(x, gens.a_power(-m));
  if (!(slope_right(h, 0) == 1) || !(slope_left(h, ctx.r()) == 1)) return std::nullopt;

  std::map<std::int64_t, std::int64_t> coeffs;
  const IntervalSet supp = support(h);
  if (!supp.empty()) {
    const Rational& lo = supp.intervals().front().lo;
    const Rational& hi = supp.intervals().back().hi;
    std::int64_t kmin = 0;
    while (lo < gens.alpha(kmin)) --kmin;
    while (gens.alpha(kmin + 1) <= lo) ++kmin;
    std::int64_t kmax = kmin + 1;
    while (gens.alpha(kmax) < hi) ++kmax;

    for (std::int64_t k = kmin; k < kmax; ++k) {
      const Rational ak = gens.alpha(k);
      if (!(evaluate(h, ak) == ak)) return std::nullopt;
      const auto eh = log_slope(slope_right(h, ak), ctx);
      const auto eb = log_slope(slope_right(gens.b_conjugate(k), ak), ctx);
      if (!eh || !eb) return std::nullopt;
      if (*eb == 0) throw Error("generator b has slope 1 at alpha0; exponents cannot be read off");
      if (*eh % *eb != 0) return std::nullopt;
      if (*eh != 0) coeffs[k] = *eh / *eb;
    }
  }
  WreathElement candidate(m, std::move(coeffs));
  if (!(embed(candidate, gens) == x)) return std::nullopt;
  return candidate;
}

bool in_H_coset_of_centralizer(const WreathElement& g, std::int64_t m) {
  if (m == 0) return g.in_base();
  if (g.shift() % m != 0) return false;
  const WreathElement ba_m = w_multiply(WreathElement::b(), WreathElement::a_power(m));
  return w_multiply(g, w_power(ba_m, -(g.shift() / m))).in_base();
}

bool centralizer_check_ba_n(const WreathElement& g, std::int64_t m) {
  if (m == 0) throw ContractViolation("centralizer_check_ba_n needs m != 0");
  const WreathElement ba_m = w_multiply(WreathElement::b(), WreathElement::a_power(m));
  return w_multiply(g, ba_m) == w_multiply(ba_m, g);
}

std::array<std::int64_t, 4> four_squares(std::int64_t k) {
  if (k < 0) throw ContractViolation("four_squares needs k >= 0");
  for (std::int64_t w = 0; 4 * w * w <= k; ++w) {
    for (std::int64_t x = w; w * w + 3 * x * x <= k; ++x) {
      for (std::int64_t y = x; w * w + x * x + 2 * y * y <= k; ++y) {
        const std::int64_t rest = k - w * w - x * x - y * y;
        auto z = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rest)));
        while (z * z > rest) --z;
        while ((z + 1) * (z + 1) <= rest) ++z;
        if (z * z == rest && z >= y) return {w, x, y, z};
      }
    }
  }
  throw Error("no four-square decomposition found for " + std::to_string(k));  // Lagrange: unreachable
}

namespace {

bool divides(std::int64_t d, std::int64_t m) { return d == 0 ? m == 0 : m % d == 0; }

/// 0, 1, -1, 2, -2, ... up to magnitude `bound`.
template <typename F>
std::optional<std::int64_t> search_by_magnitude(std::int64_t bound, F&& accept) {
  for (std::int64_t mag = 0; mag <= bound; ++mag) {
    if (accept(mag)) return mag;
    if (mag != 0 && accept(-mag)) return -mag;
  }
  return std::nullopt;
}

}  // namespace

std::int64_t pronic_from_add_div(std::int64_t k, const RobinsonConfig& config) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find({k, config.bound}); it != memo.end()) return it->second;
  }
  const std::int64_t k1 = k + 1;
  const std::int64_t two_k1 = k + k + 1;
  const auto found = search_by_magnitude(config.bound, [&](std::int64_t n) {
    if (!divides(two_k1, n + n - k)) return false;
    // Universal quantifier over m, checked on [-M; M] with M = 2|n| + |k| + |k+1|:
    // that range contains m = n and m = lcm(k, k+1) whenever n is a common
    // multiple, which pins n down to +-k(k+1).
    const std::int64_t limit = std::abs(n) + std::abs(n) + std::abs(k) + std::abs(k1);
    return !search_by_magnitude(limit, [&](std::int64_t m) {
              return divides(n, m) != (divides(k, m) && divides(k1, m));
            }).has_value();
  });
  if (!found) throw ContractViolation("search bound exhausted computing k(k+1) for k = " + std::to_string(k));
  std::lock_guard lock(mu);
  memo.emplace(std::make_pair(k, config.bound), *found);
  return *found;
}

std::int64_t mul_from_add_div(std::int64_t k, std::int64_t l, const RobinsonConfig& config) {
  const std::int64_t lhs = pronic_from_add_div(k + l, config);
  const std::int64_t pk = pronic_from_add_div(k, config);
  const std::int64_t pl = pronic_from_add_div(l, config);
  const auto found = search_by_magnitude(config.bound, [&](std::int64_t n) { return lhs == pk + pl + n + n; });
  if (!found) throw ContractViolation("search bound exhausted computing k*l");
  return *found;
}

}  // namespace thompson
