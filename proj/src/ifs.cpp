#include "favard/ifs.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "favard/errors.hpp"
#include "favard/projection.hpp"

namespace favard {

Similitude2D::Similitude2D(Rational r, Point t) : ratio(std::move(r)), translation(std::move(t)) {
  if (ratio <= Rational(0) || ratio >= Rational(1))
    throw MalformedInput("similitude ratio must lie in (0,1), got " + ratio.str());
}

IFS2D::IFS2D(std::string name, Rect base, std::vector<Similitude2D> maps, Symmetry symmetry)
    : name_(std::move(name)), base_(std::move(base)), maps_(std::move(maps)), symmetry_(symmetry) {
  if (maps_.size() < 2) throw MalformedInput("an IFS needs at least two maps");
  if (base_.x1 < base_.x0 || base_.y1 < base_.y0) throw MalformedInput("base rectangle has negative extent");
  for (const auto& m : maps_) {
    ratio_sum_ += m.ratio;
    max_ratio_ = max(max_ratio_, m.ratio);
  }
}

double IFS2D::similarity_dimension() const {
  const double first = maps_.front().ratio.to_double();
  bool uniform = true;
  for (const auto& m : maps_) uniform = uniform && m.ratio == maps_.front().ratio;
  if (uniform) return std::log(static_cast<double>(maps_.size())) / std::log(1.0 / first);

  // sum r_i^s is strictly decreasing in s
  auto f = [&](double s) {
    double total = 0;
    for (const auto& m : maps_) total += std::pow(m.ratio.to_double(), s);
    return total - 1.0;
  };
  double lo = 0, hi = 1;
  while (f(hi) > 0) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

const Rect kUnitSquare{0, 0, 1, 1};

IFS2D four_corner() {
  const Rational q(1, 4);
  const Rational t(3, 4);
  return IFS2D("four-corner", kUnitSquare,
               {Similitude2D(q, {0, 0}), Similitude2D(q, {0, t}), Similitude2D(q, {t, 0}), Similitude2D(q, {t, t})},
               Symmetry::Square);
}

IFS2D sierpinski_gasket() {
  const Rational h(1, 2);
  return IFS2D("sierpinski-gasket", kUnitSquare,
               {Similitude2D(h, {0, 0}), Similitude2D(h, {h, 0}), Similitude2D(h, {Rational(1, 4), h})});
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

IFS2D sparse_corner(long k) {
  if (k <= 4) throw MalformedInput("sparse-corner needs k > 4, got " + std::to_string(k));
  const Rational r(1, k);
  const Rational far = Rational(1) - r;
  return IFS2D("sparse-corner(" + std::to_string(k) + ")", kUnitSquare,
               {Similitude2D(r, {0, 0}), Similitude2D(r, {0, far}), Similitude2D(r, {far, 0}),
                Similitude2D(r, {far, far})},
               Symmetry::Square);
}

IFS2D preset(std::string_view name) {
  name = trim(name);
  if (name == "four-corner") return four_corner();
  if (name == "sierpinski-gasket") return sierpinski_gasket();
  constexpr std::string_view sparse = "sparse-corner";
  if (name.starts_with(sparse)) {
    std::string_view arg = name.substr(sparse.size());
    if (arg.size() >= 2 && arg.front() == '(' && arg.back() == ')') {
      arg = arg.substr(1, arg.size() - 2);
    } else if (!arg.empty() && (arg.front() == ':' || arg.front() == '-')) {
      arg.remove_prefix(1);
    } else {
      throw MalformedInput("sparse-corner needs a parameter, e.g. sparse-corner(8)");
    }
    const Rational k = Rational::parse(arg);
    if (!k.is_integer() || !k.num().fits_slong_p()) throw MalformedInput("sparse-corner parameter must be an integer");
    return sparse_corner(k.num().get_si());
  }
  throw MalformedInput("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"four-corner", "sparse-corner(k)", "sierpinski-gasket"}; }

ValidationReport validate(const IFS2D& ifs, int display_depth) {
  ValidationReport rep;
  rep.ratio_sum = ifs.ratio_sum();
  rep.convexity_applies = ifs.convexity_applies();
  rep.map_count = ifs.size();
  rep.nesting_pass = true;
  for (int k = 0; k < 8; ++k) {
    const auto d = Direction::from_angle(k * std::numbers::pi / 8);
    const auto base = project_rect(ifs.base(), d);
    bool ok = true;
    for (const auto& f : ifs.maps()) {
      const auto img = project_rect(f.apply(ifs.base()), d);
      ok = ok && base.lo <= img.lo && img.hi <= base.hi;
    }
    rep.nesting.push_back({d.label(), d.angle(), ok});
    rep.nesting_pass = rep.nesting_pass && ok;
  }
  mpz_class c = 1;
  for (int n = 0; n <= display_depth; ++n) {
    rep.cylinder_counts.push_back(c);
    c *= static_cast<unsigned long>(ifs.size());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Config format
//
//   # comment
//   name = "four-corner"
//   base = ["0", "0", "1", "1"]
//   symmetry = "square"            (optional; "none" by default)
//   map { ratio = "1/4", translate = ["0", "3/4"] }
//
// Values may be quoted or bare. A `rotation` key is reserved inside map
// blocks; anything other than zero is rejected.

namespace {

struct Token {
  enum Kind { Word, String, Punct, End } kind;
  std::string text;
  int line;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip();
    if (pos_ >= src_.size()) return {Token::End, "", line_};
    const char c = src_[pos_];
    if (c == '"') {
      const auto close = src_.find('"', pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated string");
      Token t{Token::String, std::string(src_.substr(pos_ + 1, close - pos_ - 1)), line_};
      pos_ = close + 1;
      return t;
    }
    if (c == '=' || c == '{' || c == '}' || c == '[' || c == ']' || c == ',') {
      ++pos_;
      return {Token::Punct, std::string(1, c), line_};
    }
    const auto start = pos_;
    while (pos_ < src_.size()) {
      const char d = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '=' || d == '{' || d == '}' || d == '[' || d == ']' ||
          d == ',' || d == '#' || d == '"')
        break;
      ++pos_;
    }
    return {Token::Word, std::string(src_.substr(start, pos_ - start)), line_};
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw MalformedInput("config line " + std::to_string(line_) + ": " + msg);
  }

 private:
  void skip() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  IFS2D parse() {
    std::optional<std::string> name;
    std::optional<Rect> base;
    Symmetry symmetry = Symmetry::None;
    std::vector<Similitude2D> maps;
    while (cur_.kind != Token::End) {
      const std::string key = expect_word();
      if (key == "map") {
        maps.push_back(parse_map());
        continue;
      }
      expect("=");
      if (key == "name") {
        name = value();
      } else if (key == "base") {
        const auto v = list(4);
        base = Rect{Rational::parse(v[0]), Rational::parse(v[1]), Rational::parse(v[2]), Rational::parse(v[3])};
      } else if (key == "symmetry") {
        const auto s = value();
        if (s == "square") {
          symmetry = Symmetry::Square;
        } else if (s == "none") {
          symmetry = Symmetry::None;
        } else {
          lex_.fail("unknown symmetry '" + s + "'");
        }
      } else {
        lex_.fail("unknown key '" + key + "'");
      }
    }
    if (!base) throw MalformedInput("config: missing 'base'");
    return IFS2D(name.value_or("custom"), *base, std::move(maps), symmetry);
  }

 private:
  void advance() { cur_ = lex_.next(); }

  std::string expect_word() {
    if (cur_.kind != Token::Word) lex_.fail("expected a key, got '" + cur_.text + "'");
    auto t = cur_.text;
    advance();
    return t;
  }

  void expect(const char* punct) {
    if (cur_.kind != Token::Punct || cur_.text != punct) lex_.fail(std::string("expected '") + punct + "'");
    advance();
  }

  bool accept(const char* punct) {
    if (cur_.kind == Token::Punct && cur_.text == punct) {
      advance();
      return true;
    }
    return false;
  }

  std::string value() {
    if (cur_.kind != Token::Word && cur_.kind != Token::String) lex_.fail("expected a value");
    auto t = cur_.text;
    advance();
    return t;
  }

  std::vector<std::string> list(std::size_t n) {
    expect("[");
    std::vector<std::string> out;
    while (!accept("]")) {
      if (!out.empty()) expect(",");
      out.push_back(value());
    }
    if (out.size() != n) lex_.fail("expected " + std::to_string(n) + " list entries, got " + std::to_string(out.size()));
    return out;
  }

  Similitude2D parse_map() {
    expect("{");
    std::optional<Rational> ratio;
    std::optional<Point> translate;
    bool first = true;
    while (!accept("}")) {
      if (!first) accept(",");
      first = false;
      if (cur_.kind == Token::Punct && cur_.text == "}") continue;
      const std::string key = expect_word();
      expect("=");
      if (key == "ratio") {
        ratio = Rational::parse(value());
      } else if (key == "translate") {
        const auto v = list(2);
        translate = Point{Rational::parse(v[0]), Rational::parse(v[1])};
      } else if (key == "rotation") {
        if (!Rational::parse(value()).is_zero()) lex_.fail("rotations are not supported (homotheties only)");
      } else {
        lex_.fail("unknown map key '" + key + "'");
      }
    }
    if (!ratio || !translate) lex_.fail("map needs both 'ratio' and 'translate'");
    return Similitude2D(*ratio, *translate);
  }

  Lexer lex_;
  Token cur_{Token::End, "", 0};
};

}  // namespace

IFS2D parse_config(std::string_view text) { return Parser(text).parse(); }

std::string dump_config(const IFS2D& ifs) {
  std::ostringstream os;
  os << "# favard-lab IFS config\n";
  os << "name = \"" << ifs.name() << "\"\n";
  const auto& b = ifs.base();
  os << "base = [\"" << b.x0 << "\", \"" << b.y0 << "\", \"" << b.x1 << "\", \"" << b.y1 << "\"]\n";
  os << "symmetry = \"" << (ifs.symmetry() == Symmetry::Square ? "square" : "none") << "\"\n";
  for (const auto& m : ifs.maps()) {
    os << "map { ratio = \"" << m.ratio << "\", translate = [\"" << m.translation.x << "\", \"" << m.translation.y
       << "\"] }\n";
  }
  return os.str();
}

IFS2D load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace favard
