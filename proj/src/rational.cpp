#include "conicpen/rational.hpp"

#include <cctype>

#include "conicpen/error.hpp"

namespace conicpen {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorCode::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  const auto bad = [&]() -> Rational {
    fail(ErrorCode::ParseError, "not a rational literal: '" + std::string(text) + "'");
  };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) return bad();

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse(s.substr(0, slash));
    std::string_view den = s.substr(slash + 1);
    if (!num.is_integer() || !all_digits(den)) return bad();
    BigInt d{std::string(den), 10};
    if (d == 0) return bad();
    return Rational(num.numerator(), d);
  }

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    std::string_view ex = s.substr(e + 1);
    bool eneg = false;
    if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
      eneg = ex.front() == '-';
      ex.remove_prefix(1);
    }
    if (!all_digits(ex) || ex.size() > 6) return bad();
    exponent = std::stol(std::string(ex));
    if (eneg) exponent = -exponent;
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return bad();
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    return bad();

  BigInt digits(std::string(int_part) + std::string(frac_part), 10);
  exponent -= static_cast<long>(frac_part.size());
  if (negative) digits = -digits;
  if (exponent >= 0) return Rational(BigInt(digits * pow10(static_cast<unsigned long>(exponent))));
  return Rational(digits, pow10(static_cast<unsigned long>(-exponent)));
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::CoincidentLines: return "CoincidentLines";
    case ErrorCode::CollinearPoints: return "CollinearPoints";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::IndeterminatePencil: return "IndeterminatePencil";
    case ErrorCode::DegenerateChoice: return "DegenerateChoice";
    case ErrorCode::CoplanarTriple: return "CoplanarTriple";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::InvalidDisplacement: return "InvalidDisplacement";
    case ErrorCode::DegenerateSource: return "DegenerateSource";
    case ErrorCode::BadPentagon: return "BadPentagon";
    case ErrorCode::ZeroTranslation: return "ZeroTranslation";
    case ErrorCode::PointsOffCone: return "PointsOffCone";
    case ErrorCode::DegenerateTriple: return "DegenerateTriple";
  }
  return "Unknown";
}

bool is_geometric(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
      return false;
    default:
      return true;
  }
}

}  // namespace conicpen
