#pragma once

#include <compare>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "mmsched/core.hpp"

namespace mmsched {

/// Exact rational extended with -inf and +inf. Used for multiplicative
/// approximation factors; never converted to floating point.
class Ratio {
 public:
  using Rational = boost::rational<std::int64_t>;
  enum class Kind { neg_inf, finite, pos_inf };

  Ratio() = default;
  Ratio(Value num, Value den = 1) : kind_(Kind::finite), q_(num, den) {}  // NOLINT
  explicit Ratio(Rational q) : kind_(Kind::finite), q_(q) {}

  static Ratio neg_inf() { return Ratio(Kind::neg_inf); }
  static Ratio pos_inf() { return Ratio(Kind::pos_inf); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::finite; }
  const Rational& rational() const { return q_; }
  Value numerator() const { return q_.numerator(); }
  Value denominator() const { return q_.denominator(); }

  /// "p/q", "inf" or "-inf".
  std::string to_string() const;
  static Ratio parse(const std::string& text);

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.q_ == b.q_);
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  explicit Ratio(Kind k) : kind_(k) {}
  Kind kind_ = Kind::finite;
  Rational q_{0};
};

/// ceil(a * mms) for a finite ratio a.
Value ceil_times(const Ratio& a, Value mms);
/// ceil(mms / a) for a finite positive ratio a.
Value ceil_divided(Value mms, const Ratio& a);

enum class ObjectiveKind { mult, add, welfare };

/// Largest alpha with machine value v meeting alpha * MMS (MMS >= 0) or
/// MMS / alpha (MMS < 0). MMS = 0 gives +inf when v >= 0, -inf otherwise.
Ratio machine_alpha(Value value, Value mms);

Ratio mult_objective(std::span<const Value> values, std::span<const Value> mms);
Value add_objective(std::span<const Value> values, std::span<const Value> mms);
Value welfare_objective(std::span<const Value> values, std::span<const Value> mms);

/// Objective of a schedule; integer objectives come back as n/1.
Ratio objective_of(const Schedule& s, const Instance& inst, std::span<const Value> mms,
                   ObjectiveKind kind);

}  // namespace mmsched
