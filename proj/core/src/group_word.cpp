#include "fra/group_word.hpp"

#include <algorithm>

namespace fra {

GroupWord::GroupWord(std::span<const Factor> factors) {
  factors_.reserve(factors.size());
  for (const auto& f : factors) push_back(f);
}

void GroupWord::push_back(Factor f) {
  if (!factors_.empty() && factors_.back().cancels(f))
    factors_.pop_back();
  else
    factors_.push_back(f);
}

GroupWord& GroupWord::operator*=(const GroupWord& rhs) {
  for (const auto& f : rhs.factors_) push_back(f);
  return *this;
}

GroupWord GroupWord::inverse() const {
  GroupWord out;
  out.factors_.reserve(factors_.size());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) out.factors_.push_back(it->inverted());
  return out;
}

GroupWord GroupWord::power(std::int64_t k) const {
  const GroupWord base = k < 0 ? inverse() : *this;
  GroupWord out;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
  return out;
}

GroupWord GroupWord::rotated(std::size_t k) const {
  if (factors_.empty()) return {};
  k %= factors_.size();
  std::vector<Factor> f(factors_.begin() + static_cast<std::ptrdiff_t>(k), factors_.end());
  f.insert(f.end(), factors_.begin(), factors_.begin() + static_cast<std::ptrdiff_t>(k));
  return GroupWord(f);
}

std::strong_ordering operator<=>(const GroupWord& a, const GroupWord& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                                b.factors_.end());
}

std::size_t GroupWord::hash() const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ factors_.size();
  for (const auto& f : factors_) {
    std::size_t v = (static_cast<std::size_t>(f.state) << 1) | (f.inverse ? 1U : 0U);
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

GroupWord commutator(const GroupWord& a, const GroupWord& b) { return a.inverse() * b.inverse() * a * b; }

GroupWord conjugate(const GroupWord& a, const GroupWord& by) { return by.inverse() * a * by; }

std::string to_string(const GroupWord& w, const StateSet& states) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += states.name(w[i].state);
    if (w[i].inverse) out += '\'';
  }
  return out;
}

}  // namespace fra
