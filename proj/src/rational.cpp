#include "polyrad/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace polyrad {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Parses "123.456" style decimals (no sign, no exponent) into an exact
// fraction.
Rat parse_decimal_body(const std::string& body) {
  auto dot = body.find('.');
  std::string ip = dot == std::string::npos ? body : body.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : body.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw std::invalid_argument("empty number");
  if (!ip.empty() && !all_digits(ip)) throw std::invalid_argument("bad digits");
  if (!fp.empty() && !all_digits(fp)) throw std::invalid_argument("bad digits");
  mpz_class num(ip.empty() ? std::string("0") : ip);
  mpz_class den = 1;
  for (char c : fp) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rat q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw std::invalid_argument("sign with no digits");

  Rat q;
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("bad fraction '" + text + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    q = Rat(n, d);
    q.canonicalize();
  } else {
    auto epos = s.find_first_of("eE");
    std::string body = epos == std::string::npos ? s : s.substr(0, epos);
    long expo = 0;
    if (epos != std::string::npos) {
      std::string es = s.substr(epos + 1);
      bool eneg = false;
      if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
        eneg = es[0] == '-';
        es = es.substr(1);
      }
      if (!all_digits(es) || es.size() > 6)
        throw std::invalid_argument("bad exponent in '" + text + "'");
      expo = std::stol(es);
      if (eneg) expo = -expo;
    }
    q = parse_decimal_body(body);
    mpz_class p10 = 1;
    for (long i = 0; i < (expo < 0 ? -expo : expo); ++i) p10 *= 10;
    if (expo >= 0)
      q *= Rat(p10);
    else
      q /= Rat(p10);
    q.canonicalize();
  }
  if (neg) q = -q;
  return q;
}

std::string rat_to_string(const Rat& q) {
  return q.get_str();
}

std::vector<Rat> rats_from_ints(const std::vector<int>& v) {
  std::vector<Rat> out;
  out.reserve(v.size());
  for (int x : v) out.emplace_back(x);
  return out;
}

std::vector<std::string> rats_to_strings(const std::vector<Rat>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(rat_to_string(q));
  return out;
}

bool rat_is_int(const Rat& q, long* out) {
  Rat c = q;  // constructor-built rationals may be non-canonical (e.g. 6/2)
  c.canonicalize();
  if (c.get_den() != 1) return false;
  if (!c.get_num().fits_slong_p()) return false;
  if (out) *out = c.get_num().get_si();
  return true;
}

}  // namespace polyrad
