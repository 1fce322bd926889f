#include "mmsched/ratio.hpp"

#include <algorithm>
#include <numeric>

namespace mmsched {

namespace {

Value floor_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Value ceil_div(Value a, Value b) { return -floor_div(-a, b); }

}  // namespace

std::string Ratio::to_string() const {
  switch (kind_) {
    case Kind::neg_inf:
      return "-inf";
    case Kind::pos_inf:
      return "inf";
    case Kind::finite:
      break;
  }
  return std::to_string(q_.numerator()) + "/" + std::to_string(q_.denominator());
}

Ratio Ratio::parse(const std::string& text) {
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Ratio(std::stoll(text));
    Value den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Ratio(std::stoll(text.substr(0, slash)), den);
  } catch (const std::logic_error&) {
    throw InputError("not a rational: '" + text + "'");
  }
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  auto rank = [](Ratio::Kind k) {
    return k == Ratio::Kind::neg_inf ? 0 : k == Ratio::Kind::finite ? 1 : 2;
  };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (a.kind_ != Ratio::Kind::finite) return std::strong_ordering::equal;
  if (a.q_ < b.q_) return std::strong_ordering::less;
  if (b.q_ < a.q_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Value ceil_times(const Ratio& a, Value mms) {
  if (!a.finite()) throw std::logic_error("ceil_times on infinite ratio");
  return ceil_div(a.numerator() * mms, a.denominator());
}

Value ceil_divided(Value mms, const Ratio& a) {
  if (!a.finite() || a.numerator() <= 0) throw std::logic_error("ceil_divided needs alpha > 0");
  return ceil_div(mms * a.denominator(), a.numerator());
}

Ratio machine_alpha(Value value, Value mms) {
  if (mms > 0) return Ratio(value, mms);
  if (mms < 0) return value < 0 ? Ratio(mms, value) : Ratio::pos_inf();
  return value >= 0 ? Ratio::pos_inf() : Ratio::neg_inf();
}

Ratio mult_objective(std::span<const Value> values, std::span<const Value> mms) {
  Ratio best = Ratio::pos_inf();
  for (std::size_t i = 0; i < values.size(); ++i) best = std::min(best, machine_alpha(values[i], mms[i]));
  return best;
}

Value add_objective(std::span<const Value> values, std::span<const Value> mms) {
  Value worst = 0;
  for (std::size_t i = 0; i < values.size(); ++i) worst = std::max(worst, mms[i] - values[i]);
  return worst;
}

Value welfare_objective(std::span<const Value> values, std::span<const Value> mms) {
  Value total = 0;
  for (std::size_t i = 0; i < values.size(); ++i) total += std::max<Value>(mms[i] - values[i], 0);
  return total;
}

Ratio objective_of(const Schedule& s, const Instance& inst, std::span<const Value> mms,
                   ObjectiveKind kind) {
  if (mms.size() != static_cast<std::size_t>(inst.machines()))
    throw InputError("mms vector length differs from machine count");
  auto values = machine_values(s, inst);
  switch (kind) {
    case ObjectiveKind::mult:
      return mult_objective(values, mms);
    case ObjectiveKind::add:
      return Ratio(add_objective(values, mms));
    case ObjectiveKind::welfare:
      return Ratio(welfare_objective(values, mms));
  }
  return Ratio();
}

}  // namespace mmsched
