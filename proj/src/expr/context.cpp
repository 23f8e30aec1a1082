#include "ttquant/context.hpp"

#include <algorithm>
#include <cctype>

#include "ttquant/errors.hpp"

namespace ttq {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

PhaseContext::PhaseContext(int n, std::vector<std::string> params) : n_(n), params_(std::move(params)) {
  if (n < 1) throw Error("phase-space context needs n >= 1");
  for (int i = 1; i <= n; ++i) names_.push_back("q" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names_.push_back("p" + std::to_string(i));
  for (const auto& p : params_) {
    if (!valid_identifier(p) || p == "i") throw Error("invalid parameter name '" + p + "'");
    if (std::find(names_.begin(), names_.end(), p) != names_.end()) {
      throw Error("duplicate variable name '" + p + "'");
    }
    names_.push_back(p);
  }
}

std::size_t PhaseContext::q(int i) const {
  if (i < 0 || i >= n_) throw VariableError("position index out of range");
  return static_cast<std::size_t>(i);
}

std::size_t PhaseContext::p(int i) const {
  if (i < 0 || i >= n_) throw VariableError("momentum index out of range");
  return static_cast<std::size_t>(n_ + i);
}

std::size_t PhaseContext::param(std::string_view name) const {
  for (std::size_t k = 0; k < params_.size(); ++k) {
    if (params_[k] == name) return phase_vars() + k;
  }
  throw VariableError("unknown parameter '" + std::string(name) + "'");
}

std::optional<std::size_t> PhaseContext::lookup(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) return k;
  }
  return std::nullopt;
}

void require_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw ContextMismatchError();
}

}  // namespace ttq
