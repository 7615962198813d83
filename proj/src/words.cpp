#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "conjlen/errors.hpp"
#include "conjlen/groups.hpp"

namespace conjlen {

namespace {

constexpr long kMaxPower = 1'000'000;
constexpr std::size_t kMaxWordLength = 10'000'000;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

long parse_power(std::string_view text, std::size_t pos) {
  std::string_view body = text;
  std::size_t offset = 0;
  if (!body.empty() && body.front() == '{') {
    if (body.size() < 2 || body.back() != '}') throw ParseError("unterminated '{' in exponent", pos);
    body = body.substr(1, body.size() - 2);
    offset = 1;
  }
  if (!body.empty() && body.front() == '+') {
    body.remove_prefix(1);
    ++offset;
  }
  if (body.empty()) throw ParseError("missing exponent", pos + offset);
  long value = 0;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) throw ParseError("exponent too large", pos + offset);
  if (ec != std::errc() || ptr != last)
    throw ParseError("invalid exponent", pos + offset + static_cast<std::size_t>(ptr - first));
  if (value > kMaxPower || value < -kMaxPower) throw ParseError("exponent too large", pos + offset);
  return value;
}

void append_power(Word& w, std::uint32_t gen, const Int& power) {
  if (power == 0) return;
  const Int magnitude = abs(power);
  if (magnitude > static_cast<unsigned long>(kMaxWordLength) || w.size() + magnitude.get_ui() > kMaxWordLength)
    throw DomainError("word too long to spell");
  const int sign = sgn(power) > 0 ? 1 : -1;
  const unsigned long n = magnitude.get_ui();
  w.insert(w.end(), n, Letter{gen, sign});
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

// Keys: int64 fields are zigzag varints.  Int fields use the low bit as a tag:
// small values (|v| < 2^61) store zigzag(v) << 1, larger ones store a header
// (bytes << 2 | sign << 1 | 1) followed by the magnitude in little-endian bytes.
void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7F) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

std::uint64_t zigzag(std::int64_t v) {
  return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}

std::int64_t unzigzag(std::uint64_t v) {
  return static_cast<std::int64_t>(v >> 1) ^ -static_cast<std::int64_t>(v & 1);
}

void put_int(std::string& out, const Int& v) {
  constexpr long kSmall = 1L << 61;
  if (v.fits_slong_p()) {
    const long x = v.get_si();
    if (x < kSmall && x > -kSmall) {
      put_varint(out, zigzag(x) << 1);
      return;
    }
  }
  std::size_t count = 0;
  std::string bytes((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8, '\0');
  mpz_export(bytes.data(), &count, -1, 1, 0, 0, v.get_mpz_t());
  bytes.resize(count);
  put_varint(out, (static_cast<std::uint64_t>(count) << 2) | (sgn(v) < 0 ? 2U : 0U) | 1U);
  out += bytes;
}

class KeyReader {
 public:
  explicit KeyReader(std::string_view key) : key_(key) {}

  std::uint64_t varint() {
    std::uint64_t v = 0;
    int shift = 0;
    for (;;) {
      if (pos_ >= key_.size() || shift > 63) throw DomainError("malformed element key");
      const auto byte = static_cast<unsigned char>(key_[pos_++]);
      v |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
      if ((byte & 0x80) == 0) return v;
      shift += 7;
    }
  }

  std::int64_t i64() { return unzigzag(varint()); }

  Int integer() {
    const std::uint64_t h = varint();
    if ((h & 1) == 0) return Int(static_cast<long>(unzigzag(h >> 1)));
    const std::size_t count = h >> 2;
    if (pos_ + count > key_.size()) throw DomainError("malformed element key");
    Int v;
    mpz_import(v.get_mpz_t(), count, -1, 1, 0, 0, key_.data() + pos_);
    pos_ += count;
    if (h & 2) v = -v;
    return v;
  }

  bool done() const { return pos_ == key_.size(); }

 private:
  std::string_view key_;
  std::size_t pos_ = 0;
};

class ElementParser {
 public:
  explicit ElementParser(std::string_view text) : text_(text) {}

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Int integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
    Int v;
    if (digits.empty() || digits == "-" || v.set_str(digits, 10) != 0) throw ParseError("expected integer", start);
    return v;
  }

  std::int64_t i64() {
    const std::size_t start = pos_;
    Int v = integer();
    if (!v.fits_slong_p()) throw ParseError("exponent out of range", start);
    return v.get_si();
  }

  IntVector vector() {
    IntVector v;
    expect('(');
    if (peek(')')) {
      ++pos_;
      return v;
    }
    for (;;) {
      v.push_back(integer());
      if (peek(')')) {
        ++pos_;
        return v;
      }
      expect(',');
    }
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) throw ParseError("trailing characters", pos_);
  }

 private:
  void skip() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const GroupConfig& cfg, std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    const std::string_view token = text.substr(start, i - start);
    const std::size_t caret = token.find('^');
    const std::string_view name = token.substr(0, caret);
    if (name.empty()) throw ParseError("missing generator name", start);
    const int gen = cfg.generator_index(name);
    if (gen < 0) throw ParseError("unknown generator '" + std::string(name) + "'", start);
    long power = 1;
    if (caret != std::string_view::npos) power = parse_power(token.substr(caret + 1), start + caret + 1);
    if (w.size() + static_cast<std::size_t>(std::labs(power)) > kMaxWordLength)
      throw ParseError("word too long", start);
    w.insert(w.end(), static_cast<std::size_t>(std::labs(power)),
             Letter{static_cast<std::uint32_t>(gen), power > 0 ? 1 : -1});
  }
  return w;
}

std::string word_to_string(const GroupConfig& cfg, const Word& w) {
  std::string out;
  const auto& names = cfg.generator_names();
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    long power = 0;
    while (j < w.size() && w[j].gen == w[i].gen && w[j].sign == w[i].sign) {
      power += w[j].sign;
      ++j;
    }
    if (!out.empty()) out += ' ';
    out += names.at(w[i].gen);
    if (power != 1) out += '^' + std::to_string(power);
    i = j;
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& l : r) l.sign = -l.sign;
  return r;
}

Word normal_form_word(const GroupConfig& cfg, const Element& e) {
  Word w;
  const std::size_t d = cfg.d();
  if (const auto* g = std::get_if<GmElement>(&e)) {
    const auto t = static_cast<std::uint32_t>(d);
    append_power(w, t, Int(static_cast<long>(-g->p)));
    for (std::size_t i = 0; i < d; ++i) append_power(w, static_cast<std::uint32_t>(i), g->w[i]);
    append_power(w, t, Int(static_cast<long>(g->p)) + Int(static_cast<long>(g->s)));
  } else {
    const auto& sd = std::get<SdElement>(e);
    for (std::size_t i = 0; i < d; ++i) append_power(w, static_cast<std::uint32_t>(i), sd.x[i]);
    for (std::size_t j = 0; j < sd.y.size(); ++j)
      append_power(w, static_cast<std::uint32_t>(d + j), Int(static_cast<long>(sd.y[j])));
  }
  return free_reduce(w);
}

std::string to_string(const Element& e) {
  std::ostringstream os;
  if (const auto* g = std::get_if<GmElement>(&e)) {
    os << '(' << g->p << ',' << g->w << ',' << g->s << ')';
  } else {
    const auto& sd = std::get<SdElement>(e);
    os << '(' << sd.x << ",(";
    for (std::size_t j = 0; j < sd.y.size(); ++j) os << (j ? "," : "") << sd.y[j];
    os << "))";
  }
  return os.str();
}

Element parse_element(const GroupConfig& cfg, std::string_view text) {
  ElementParser ps(text);
  ps.expect('(');
  if (cfg.family() == Family::semidirect) {
    SdElement e;
    e.x = ps.vector();
    ps.expect(',');
    for (const auto& v : ps.vector()) {
      if (!v.fits_slong_p()) throw ParseError("exponent out of range", 0);
      e.y.push_back(v.get_si());
    }
    ps.expect(')');
    ps.finish();
    if (e.x.size() != cfg.d() || e.y.size() != cfg.k()) throw ParseError("element has the wrong dimensions", 0);
    return e;
  }
  const std::int64_t p = ps.i64();
  ps.expect(',');
  IntVector w = ps.vector();
  ps.expect(',');
  const std::int64_t s = ps.i64();
  ps.expect(')');
  ps.finish();
  if (w.size() != cfg.d()) throw ParseError("element has the wrong dimensions", 0);
  if (p < 0) throw ParseError("p must be nonnegative", 0);
  return gm_normalize(cfg, p, std::move(w), s);
}

std::string encode_key(const Element& e) {
  std::string out;
  if (const auto* g = std::get_if<GmElement>(&e)) {
    put_varint(out, zigzag(g->p));
    for (const auto& v : g->w) put_int(out, v);
    put_varint(out, zigzag(g->s));
  } else {
    const auto& sd = std::get<SdElement>(e);
    for (const auto& v : sd.x) put_int(out, v);
    for (auto v : sd.y) put_varint(out, zigzag(v));
  }
  return out;
}

Element decode_key(const GroupConfig& cfg, std::string_view key) {
  KeyReader r(key);
  const std::size_t d = cfg.d();
  if (cfg.family() == Family::semidirect) {
    SdElement e;
    e.x.reserve(d);
    for (std::size_t i = 0; i < d; ++i) e.x.push_back(r.integer());
    for (std::size_t j = 0; j < cfg.k(); ++j) e.y.push_back(r.i64());
    if (!r.done()) throw DomainError("malformed element key");
    return e;
  }
  GmElement e;
  e.p = r.i64();
  e.w.reserve(d);
  for (std::size_t i = 0; i < d; ++i) e.w.push_back(r.integer());
  e.s = r.i64();
  if (!r.done()) throw DomainError("malformed element key");
  return e;
}

}  // namespace conjlen
