#pragma once

#include <stdexcept>
#include <string>

// Time labels for the interaction-picture expansion.  An external point t_j
// sits between the internal points generated by expanding U^dag(t_j,t0)
// (branch +, placed left of x(t_j)) and U(t_j,t0) (branch -, placed right).
// The ordering structure "->" is the total order
//     t_{1+} -> t_1 -> t_{1-} -> t_{2+} -> t_2 -> t_{2-} -> ...
// extended transitively; it constrains permissible vertex labels.

namespace wightman {

struct TimeLabel {
  enum class Kind { External, InternalPlus, InternalMinus };

  Kind kind = Kind::External;
  int j = 1;     // 1-based external anchor index
  int copy = 1;  // superscript distinguishing same-slot integration variables

  static TimeLabel external(int j) {
    if (j < 1) throw std::invalid_argument("external index is 1-based");
    return {Kind::External, j, 1};
  }
  static TimeLabel internal(int j, int branch, int copy = 1) {
    if (j < 1) throw std::invalid_argument("internal anchor is 1-based");
    if (branch != +1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
    return {branch > 0 ? Kind::InternalPlus : Kind::InternalMinus, j, copy};
  }

  bool is_internal() const { return kind != Kind::External; }
  int branch() const {
    switch (kind) {
      case Kind::InternalPlus:
        return +1;
      case Kind::InternalMinus:
        return -1;
      default:
        throw std::logic_error("external label has no branch");
    }
  }

  // Position in the ordering structure; copies share a rank.
  int rank() const {
    const int base = 3 * (j - 1);
    switch (kind) {
      case Kind::InternalPlus:
        return base;
      case Kind::External:
        return base + 1;
      case Kind::InternalMinus:
        return base + 2;
    }
    return base;
  }

  bool same_slot(const TimeLabel& o) const { return kind == o.kind && j == o.j && kind != Kind::External; }

  std::string str() const {
    std::string s = "t_{" + std::to_string(j);
    if (kind == Kind::InternalPlus) s += "+";
    if (kind == Kind::InternalMinus) s += "-";
    s += "}";
    if (is_internal() && copy > 1) s += "(" + std::to_string(copy) + ")";
    return s;
  }

  friend bool operator==(const TimeLabel& a, const TimeLabel& b) {
    return a.kind == b.kind && a.j == b.j && a.copy == b.copy;
  }
};

// The strict ordering a -> b on L_n (copies are never ordered by "->").
inline bool label_before(const TimeLabel& a, const TimeLabel& b) { return a.rank() < b.rank(); }

}  // namespace wightman
