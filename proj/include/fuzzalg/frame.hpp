#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzalg/error.hpp"

namespace fuzzalg {

class Frame;
using FramePtr = std::shared_ptr<const Frame>;

// One element of a frame. Identity is (owner, id); elements of different
// frames never compare equal and cannot be combined.
struct FrameElem {
  const Frame* owner = nullptr;
  int id = -1;

  bool operator==(const FrameElem&) const = default;
  bool operator<(const FrameElem& o) const {
    if (owner != o.owner) return owner < o.owner;
    return id < o.id;
  }
};

// Finite complete Heyting algebra: a finite distributive lattice with all
// sups/infs. Truth values of the logic live here.
class Frame {
 public:
  // Validates a raw reflexive order table over named elements and builds the
  // frame. Throws NotPartialOrder / NoMeetOrJoin / NotDistributive with a
  // violating witness in the message.
  static FramePtr validate(std::string name, std::vector<std::string> elems,
                           const std::vector<std::vector<bool>>& leq_table);

  // Total order 0 < 1 < ... < n-1 on elements named "0","1",...
  static FramePtr chain(int n, std::string name = "");
  // Powerset of n atoms, 2^n elements named as bit strings ("b10" etc).
  static FramePtr boolean(int n_atoms, std::string name = "");

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(elems_.size()); }

  FrameElem elem(int id) const;
  const std::string& elem_name(FrameElem e) const;
  std::optional<FrameElem> by_name(const std::string& s) const;

  bool leq(FrameElem a, FrameElem b) const;
  FrameElem meet(FrameElem a, FrameElem b) const;
  FrameElem join(FrameElem a, FrameElem b) const;
  FrameElem bot() const { return elem(bot_); }
  FrameElem top() const { return elem(top_); }

  // sup of the empty family is bot, inf of the empty family is top.
  FrameElem sup(std::span<const FrameElem> xs) const;
  FrameElem inf(std::span<const FrameElem> xs) const;

  // All elements, in id order.
  std::vector<FrameElem> elements() const;

  // Same element names in the same order with the same order relation.
  // The frame's own display name is not compared.
  bool same_structure(const Frame& other) const;

 private:
  Frame() = default;
  void check_owner(FrameElem a) const;

  std::string name_;
  std::vector<std::string> elems_;
  std::vector<bool> leq_;   // n*n, row-major: leq_[a*n+b] == (a <= b)
  std::vector<int> meet_;   // n*n tables
  std::vector<int> join_;
  int bot_ = -1, top_ = -1;
};

}  // namespace fuzzalg
