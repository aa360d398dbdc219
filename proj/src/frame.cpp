#include "fuzzalg/frame.hpp"

#include <algorithm>
#include <set>

namespace fuzzalg {

namespace {

// Least upper bound of {a,b} in the given order table, or -1 when it does
// not exist (no upper bound, or no least one).
int bound(const std::vector<bool>& leq, int n, int a, int b, bool upper) {
  std::vector<int> cands;
  for (int c = 0; c < n; ++c) {
    bool ok = upper ? (leq[a * n + c] && leq[b * n + c])
                    : (leq[c * n + a] && leq[c * n + b]);
    if (ok) cands.push_back(c);
  }
  for (int c : cands) {
    bool extremal = true;
    for (int d : cands) {
      bool rel = upper ? leq[c * n + d] : leq[d * n + c];
      if (!rel) { extremal = false; break; }
    }
    if (extremal) return c;
  }
  return -1;
}

}  // namespace

FramePtr Frame::validate(std::string name, std::vector<std::string> elems,
                         const std::vector<std::vector<bool>>& leq_table) {
  const int n = static_cast<int>(elems.size());
  if (n == 0) fail(ErrorKind::BadInput, "frame '" + name + "' has no elements");
  if (static_cast<int>(leq_table.size()) != n)
    fail(ErrorKind::BadInput, "order table is not square");
  std::set<std::string> seen;
  for (const auto& e : elems)
    if (!seen.insert(e).second)
      fail(ErrorKind::NameClash, "duplicate frame element '" + e + "'");

  std::vector<bool> leq(n * n, false);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(leq_table[i].size()) != n)
      fail(ErrorKind::BadInput, "order table is not square");
    for (int j = 0; j < n; ++j) leq[i * n + j] = leq_table[i][j];
  }

  auto fr = std::shared_ptr<Frame>(new Frame());
  fr->name_ = std::move(name);
  fr->elems_ = std::move(elems);
  auto nm = [&](int i) { return fr->elems_[i]; };

  // partial order: reflexive, antisymmetric, transitive
  for (int a = 0; a < n; ++a)
    if (!leq[a * n + a])
      fail(ErrorKind::NotPartialOrder, "not reflexive at " + nm(a));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && leq[a * n + b] && leq[b * n + a])
        fail(ErrorKind::NotPartialOrder,
             "antisymmetry fails on (" + nm(a) + ", " + nm(b) + ")");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (leq[a * n + b] && leq[b * n + c] && !leq[a * n + c])
          fail(ErrorKind::NotPartialOrder, "transitivity fails on (" + nm(a) +
                                               ", " + nm(b) + ", " + nm(c) + ")");

  fr->leq_ = std::move(leq);
  fr->meet_.assign(n * n, -1);
  fr->join_.assign(n * n, -1);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int m = bound(fr->leq_, n, a, b, false);
      int j = bound(fr->leq_, n, a, b, true);
      if (m < 0)
        fail(ErrorKind::NoMeetOrJoin, "no meet for (" + nm(a) + ", " + nm(b) + ")");
      if (j < 0)
        fail(ErrorKind::NoMeetOrJoin, "no join for (" + nm(a) + ", " + nm(b) + ")");
      fr->meet_[a * n + b] = m;
      fr->join_[a * n + b] = j;
    }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int lhs = fr->meet_[a * n + fr->join_[b * n + c]];
        int rhs = fr->join_[fr->meet_[a * n + b] * n + fr->meet_[a * n + c]];
        if (lhs != rhs)
          fail(ErrorKind::NotDistributive, "distributivity fails on (" + nm(a) +
                                               ", " + nm(b) + ", " + nm(c) + ")");
      }

  // bottom and top exist in any finite lattice: fold meets/joins
  int bot = 0, top = 0;
  for (int a = 1; a < n; ++a) {
    bot = fr->meet_[bot * n + a];
    top = fr->join_[top * n + a];
  }
  fr->bot_ = bot;
  fr->top_ = top;
  return fr;
}

FramePtr Frame::chain(int n, std::string name) {
  if (n <= 0) fail(ErrorKind::BadInput, "chain size must be positive");
  std::vector<std::string> elems;
  for (int i = 0; i < n; ++i) elems.push_back(std::to_string(i));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq[i][j] = true;
  return validate(name.empty() ? "chain" + std::to_string(n) : name,
                  std::move(elems), leq);
}

FramePtr Frame::boolean(int n_atoms, std::string name) {
  if (n_atoms < 0 || n_atoms > 10)
    fail(ErrorKind::BadInput, "boolean frame atom count out of range");
  const int n = 1 << n_atoms;
  std::vector<std::string> elems;
  for (int s = 0; s < n; ++s) {
    std::string e = "b";
    for (int k = n_atoms - 1; k >= 0; --k) e += (s >> k) & 1 ? '1' : '0';
    elems.push_back(e);
  }
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) leq[s][t] = (s & t) == s;
  return validate(name.empty() ? "bool" + std::to_string(n_atoms) : name,
                  std::move(elems), leq);
}

void Frame::check_owner(FrameElem a) const {
  if (a.owner != this || a.id < 0 || a.id >= size())
    fail(ErrorKind::FrameMismatch,
         "element does not belong to frame '" + name_ + "'");
}

FrameElem Frame::elem(int id) const {
  if (id < 0 || id >= size())
    fail(ErrorKind::BadInput, "element id out of range");
  return FrameElem{this, id};
}

const std::string& Frame::elem_name(FrameElem e) const {
  check_owner(e);
  return elems_[e.id];
}

std::optional<FrameElem> Frame::by_name(const std::string& s) const {
  auto it = std::find(elems_.begin(), elems_.end(), s);
  if (it == elems_.end()) return std::nullopt;
  return FrameElem{this, static_cast<int>(it - elems_.begin())};
}

bool Frame::leq(FrameElem a, FrameElem b) const {
  check_owner(a);
  check_owner(b);
  return leq_[a.id * size() + b.id];
}

FrameElem Frame::meet(FrameElem a, FrameElem b) const {
  check_owner(a);
  check_owner(b);
  return FrameElem{this, meet_[a.id * size() + b.id]};
}

FrameElem Frame::join(FrameElem a, FrameElem b) const {
  check_owner(a);
  check_owner(b);
  return FrameElem{this, join_[a.id * size() + b.id]};
}

FrameElem Frame::sup(std::span<const FrameElem> xs) const {
  FrameElem acc = bot();
  for (auto x : xs) acc = join(acc, x);
  return acc;
}

FrameElem Frame::inf(std::span<const FrameElem> xs) const {
  FrameElem acc = top();
  for (auto x : xs) acc = meet(acc, x);
  return acc;
}

std::vector<FrameElem> Frame::elements() const {
  std::vector<FrameElem> out;
  for (int i = 0; i < size(); ++i) out.push_back(FrameElem{this, i});
  return out;
}

bool Frame::same_structure(const Frame& other) const {
  return elems_ == other.elems_ && leq_ == other.leq_;
}

}  // namespace fuzzalg
