#include <algorithm>

#include <json.hpp>

#include "pwmarkov/errors.hpp"
#include "pwmarkov/system.hpp"

namespace pwm {

CustomSystem::CustomSystem(std::string name, std::vector<Entry> entries, Tail tail)
    : name_(std::move(name)), entries_(std::move(entries)), tail_(std::move(tail)) {
  if (entries_.empty()) throw SpecError("custom system '" + name_ + "' has no branches");
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.n < b.n; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].slope == 0) {
      throw SpecError("custom branch n = " + to_string(entries_[i].n) + " has zero slope");
    }
    if (i > 0 && entries_[i].n == entries_[i - 1].n) {
      throw SpecError("custom branch n = " + to_string(entries_[i].n) + " is listed twice");
    }
  }
  if (tail_.kind == TailKind::constant_slope && tail_.k < 2) {
    throw SpecError("constant-slope tail needs k >= 2");
  }
  first_ = entries_.front().n;
  last_ = entries_.back().n;
}

const CustomSystem::Entry* CustomSystem::find(const BigInt& n) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                                   [](const Entry& e, const BigInt& key) { return e.n < key; });
  if (it == entries_.end() || it->n != n) return nullptr;
  return &*it;
}

// Past the table without a tail the system is incomplete, not smaller: branch() reports SpecError.
bool CustomSystem::in_domain(const BigInt& n) const { return n >= first_; }

BranchSpec CustomSystem::branch(const BigInt& n) const {
  if (n < first_) {
    throw DomainError("branch index " + to_string(n) + " is below the table of " + name_);
  }
  if (n <= last_) {
    const Entry* e = find(n);
    if (e == nullptr) throw SpecError("custom system " + name_ + " has no branch n = " + to_string(n));
    return BranchSpec::affine(n, e->slope, e->f_left);
  }
  switch (tail_.kind) {
    case TailKind::repeat_last_branch_shape:
      return BranchSpec::affine(n, entries_.back().slope, entries_.back().f_left);
    case TailKind::constant_slope:
      return BranchSpec::affine(n, tail_.k, BigInt(0));
    case TailKind::none:
      break;
  }
  throw SpecError("custom system " + name_ + " has no branch n = " + to_string(n) + " and no tail rule");
}

BigInt CustomSystem::run_end(const BigInt& n, const BigInt& cap) const {
  const BigInt limit = std::max(cap, n);
  if (tail_.kind == TailKind::none) return n;
  if (n > last_) return limit;
  if (n == last_ && tail_.kind == TailKind::repeat_last_branch_shape) return limit;
  return n;
}

bool CustomSystem::covers(const BigInt& lo, const BigInt& hi) const {
  if (hi < lo) return true;
  if (lo < first_) return false;
  if (hi > last_ && tail_.kind == TailKind::none) return false;
  if (lo > last_) return true;
  const BigInt table_hi = std::min(hi, last_);
  const auto begin = std::lower_bound(entries_.begin(), entries_.end(), lo,
                                      [](const Entry& e, const BigInt& key) { return e.n < key; });
  const auto end = std::upper_bound(entries_.begin(), entries_.end(), table_hi,
                                    [](const BigInt& key, const Entry& e) { return key < e.n; });
  const BigInt present(static_cast<unsigned long>(end - begin));
  return present == table_hi - lo + 1;
}

namespace {

BigInt json_integer(const nlohmann::json& value, const std::string& field) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) return BigInt(value.get<unsigned long>());
    return BigInt(value.get<long>());
  }
  if (value.is_string()) return parse_bigint(value.get<std::string>());
  throw SpecError("field '" + field + "' must be an integer or a decimal string");
}

}  // namespace

SystemPtr load_custom_system(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("system file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("system file must be a JSON object");
  const std::string name = doc.value("name", std::string("custom"));
  if (!doc.contains("branches") || !doc["branches"].is_array()) {
    throw SpecError("system file needs a \"branches\" array");
  }
  std::vector<CustomSystem::Entry> entries;
  for (const auto& b : doc["branches"]) {
    if (!b.is_object() || !b.contains("n") || !b.contains("slope") || !b.contains("f_left")) {
      throw SpecError("each branch needs \"n\", \"slope\" and \"f_left\"");
    }
    entries.push_back({json_integer(b["n"], "n"), json_integer(b["slope"], "slope"),
                       json_integer(b["f_left"], "f_left")});
  }
  CustomSystem::Tail tail;
  if (doc.contains("tail") && !doc["tail"].is_null()) {
    const auto& t = doc["tail"];
    if (!t.is_object() || !t.contains("kind") || !t["kind"].is_string()) {
      throw SpecError("\"tail\" must be an object with a string \"kind\"");
    }
    const std::string kind = t["kind"].get<std::string>();
    if (kind == "repeat-last-branch-shape") {
      tail.kind = CustomSystem::TailKind::repeat_last_branch_shape;
    } else if (kind == "constant-slope") {
      tail.kind = CustomSystem::TailKind::constant_slope;
      if (!t.contains("k")) throw SpecError("constant-slope tail needs \"k\"");
      tail.k = json_integer(t["k"], "k");
    } else if (kind == "none") {
      tail.kind = CustomSystem::TailKind::none;
    } else {
      throw SpecError("unknown tail kind '" + kind +
                      "' (expected repeat-last-branch-shape, constant-slope or none)");
    }
  }
  return std::make_shared<CustomSystem>(name, std::move(entries), std::move(tail));
}

}  // namespace pwm
