#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ulrich_kit/error.hpp"

namespace ulrich_kit {

/// Closed twist range [lo, hi].
struct Window {
  int lo = 0;
  int hi = 0;

  bool contains(int t) const { return lo <= t && t <= hi; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Twist window used when the caller does not pick one: [-(2 dim + 5), dim + 2].
inline Window default_window(int dim) { return Window{-(2 * dim + 5), dim + 2}; }

/// Dimensions h^i(E(t)) for every twist t in a window. Only nonzero entries are stored.
class CohomologyTable {
 public:
  struct Row {
    int i;
    int t;
    std::int64_t h;
  };

  CohomologyTable() = default;
  explicit CohomologyTable(Window window, bool complete = true) : window_(window), complete_(complete) {}

  const Window& window() const { return window_; }
  bool complete() const { return complete_; }

  void set(int i, int t, std::int64_t h) {
    if (!window_.contains(t)) throw Error(ErrorKind::IncompleteTable, "twist " + std::to_string(t) + " outside table window");
    if (h < 0) throw Error(ErrorKind::MalformedModel, "negative cohomology dimension");
    if (h == 0) entries_.erase({t, i});
    else entries_[{t, i}] = h;
  }

  void add(int i, int t, std::int64_t h) { set(i, t, at(i, t) + h); }

  std::int64_t at(int i, int t) const {
    if (!window_.contains(t))
      throw Error(ErrorKind::IncompleteTable, "twist " + std::to_string(t) + " outside window [" + std::to_string(window_.lo) +
                                                  "," + std::to_string(window_.hi) + "]");
    const auto it = entries_.find({t, i});
    return it == entries_.end() ? 0 : it->second;
  }

  /// Nonzero (i, h) pairs of one twist, increasing in i.
  std::vector<std::pair<int, std::int64_t>> column(int t) const {
    (void)at(0, t);
    std::vector<std::pair<int, std::int64_t>> out;
    for (auto it = entries_.lower_bound({t, std::numeric_limits<int>::min()}); it != entries_.end() && it->first.first == t; ++it)
      out.emplace_back(it->first.second, it->second);
    return out;
  }

  bool column_zero(int t) const { return column(t).empty(); }

  /// First nonzero entry of column t, if any.
  std::optional<Row> first_nonzero(int t) const {
    const auto col = column(t);
    if (col.empty()) return std::nullopt;
    return Row{col.front().first, t, col.front().second};
  }

  std::int64_t alternating_sum(int t) const {
    std::int64_t chi = 0;
    for (const auto& [i, h] : column(t)) chi += (i % 2 == 0 ? h : -h);
    return chi;
  }

  /// Rows ordered by twist, then degree.
  std::vector<Row> rows() const {
    std::vector<Row> out;
    out.reserve(entries_.size());
    for (const auto& [key, h] : entries_) out.push_back({key.second, key.first, h});
    return out;
  }

  CohomologyTable& operator+=(const CohomologyTable& other) {
    if (!(other.window_ == window_)) throw Error(ErrorKind::IncompleteTable, "adding tables over different windows");
    for (const auto& [key, h] : other.entries_) entries_[key] += h;
    complete_ = complete_ && other.complete_;
    return *this;
  }

  friend CohomologyTable operator+(CohomologyTable a, const CohomologyTable& b) { return a += b; }

  CohomologyTable scaled(std::int64_t factor) const {
    CohomologyTable out(window_, complete_);
    if (factor == 0) return out;
    for (const auto& [key, h] : entries_) out.entries_[key] = h * factor;
    return out;
  }

  /// Table of E[k]: entry (i, t) equals the entry (i + k, t) of this table.
  CohomologyTable shifted(int k) const {
    CohomologyTable out(window_, complete_);
    for (const auto& [key, h] : entries_) out.entries_[{key.first, key.second - k}] = h;
    return out;
  }

  /// Table of E(s): entry (i, t) equals the entry (i, t + s) of this table; window moves by -s.
  CohomologyTable twisted(int s) const {
    CohomologyTable out(Window{window_.lo - s, window_.hi - s}, complete_);
    for (const auto& [key, h] : entries_) out.entries_[{key.first - s, key.second}] = h;
    return out;
  }

  CohomologyTable restricted(Window w) const {
    if (w.lo < window_.lo || w.hi > window_.hi) throw Error(ErrorKind::IncompleteTable, "restriction window exceeds table window");
    CohomologyTable out(w, complete_);
    for (const auto& [key, h] : entries_)
      if (w.contains(key.first)) out.entries_[key] = h;
    return out;
  }

  friend bool operator==(const CohomologyTable& a, const CohomologyTable& b) {
    return a.window_ == b.window_ && a.entries_ == b.entries_;
  }

 private:
  Window window_{};
  bool complete_ = true;
  std::map<std::pair<int, int>, std::int64_t> entries_;  // keyed (t, i)
};

}  // namespace ulrich_kit
