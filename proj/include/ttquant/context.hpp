#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ttq {

/// Variable registry for a phase space T*Q with dim Q = n.
///
/// Variables are indexed q1..qn (0..n-1), p1..pn (n..2n-1), then the
/// parameters in declaration order. The index order doubles as the monomial
/// variable order.
class PhaseContext {
 public:
  /// Throws Error on n < 1 or clashing names.
  explicit PhaseContext(int n, std::vector<std::string> params = {"hbar", "m", "omega"});

  int n() const noexcept { return n_; }
  std::size_t nvars() const noexcept { return 2 * static_cast<std::size_t>(n_) + params_.size(); }
  std::size_t phase_vars() const noexcept { return 2 * static_cast<std::size_t>(n_); }
  const std::vector<std::string>& params() const noexcept { return params_; }

  /// Zero-based: q(0) is q1.
  std::size_t q(int i) const;
  std::size_t p(int i) const;
  /// Throws VariableError for unknown parameter names.
  std::size_t param(std::string_view name) const;

  bool is_q(std::size_t var) const noexcept { return var < static_cast<std::size_t>(n_); }
  bool is_p(std::size_t var) const noexcept { return var >= static_cast<std::size_t>(n_) && var < phase_vars(); }
  bool is_phase(std::size_t var) const noexcept { return var < phase_vars(); }
  bool is_param(std::size_t var) const noexcept { return var >= phase_vars() && var < nvars(); }

  const std::string& name(std::size_t var) const { return names_.at(var); }
  std::optional<std::size_t> lookup(std::string_view name) const;

  friend bool operator==(const PhaseContext& a, const PhaseContext& b) {
    return a.n_ == b.n_ && a.params_ == b.params_;
  }

 private:
  int n_;
  std::vector<std::string> params_;
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const PhaseContext>;

inline ContextPtr make_context(int n, std::vector<std::string> params = {"hbar", "m", "omega"}) {
  return std::make_shared<const PhaseContext>(n, std::move(params));
}

/// Throws ContextMismatchError unless both contexts describe the same space.
void require_same_context(const ContextPtr& a, const ContextPtr& b);

}  // namespace ttq
