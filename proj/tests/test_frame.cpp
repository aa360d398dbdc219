#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "fuzzalg/frame.hpp"

using namespace fuzzalg;

namespace {

// Raw order table from a covering description: leq = reflexive transitive
// closure of the listed edges.
std::vector<std::vector<bool>> closure(int n, std::vector<std::pair<int, int>> edges) {
  std::vector<std::vector<bool>> t(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) t[i][i] = true;
  for (auto [a, b] : edges) t[a][b] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t[a][b] && t[b][c] && !t[a][c]) t[a][c] = changed = true;
  }
  return t;
}

std::vector<std::vector<FrameElem>> subsets(const Frame& f) {
  auto es = f.elements();
  std::vector<std::vector<FrameElem>> out;
  for (unsigned m = 0; m < (1u << es.size()); ++m) {
    std::vector<FrameElem> s;
    for (size_t i = 0; i < es.size(); ++i)
      if (m & (1u << i)) s.push_back(es[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("chain frame basics") {
  auto f = Frame::chain(3);
  REQUIRE(f->size() == 3);
  CHECK(f->elem_name(f->bot()) == "0");
  CHECK(f->elem_name(f->top()) == "2");
  auto h = *f->by_name("1");
  CHECK(f->leq(f->bot(), h));
  CHECK(f->leq(h, f->top()));
  CHECK_FALSE(f->leq(f->top(), h));
  CHECK(f->meet(h, f->top()) == h);
  CHECK(f->join(h, f->bot()) == h);
  CHECK_FALSE(f->by_name("3").has_value());
}

TEST_CASE("boolean frame basics") {
  auto f = Frame::boolean(2);
  REQUIRE(f->size() == 4);
  auto a1 = *f->by_name("b01");
  auto a2 = *f->by_name("b10");
  CHECK(f->elem_name(f->bot()) == "b00");
  CHECK(f->elem_name(f->top()) == "b11");
  CHECK(f->meet(a1, a2) == f->bot());
  CHECK(f->join(a1, a2) == f->top());
  CHECK_FALSE(f->leq(a1, a2));
  CHECK_FALSE(f->leq(a2, a1));
}

TEST_CASE("validate accepts a hand-written chain") {
  auto f = Frame::validate("three", {"lo", "mid", "hi"},
                           closure(3, {{0, 1}, {1, 2}}));
  CHECK(f->elem_name(f->bot()) == "lo");
  CHECK(f->elem_name(f->top()) == "hi");
  CHECK(f->meet(*f->by_name("mid"), *f->by_name("hi")) == *f->by_name("mid"));
}

TEST_CASE("validate rejects broken antisymmetry") {
  // a <= b and b <= a with a != b
  std::vector<std::vector<bool>> t = {{true, true}, {true, true}};
  CHECK_THROWS_WITH_AS(Frame::validate("bad", {"a", "b"}, t),
                       doctest::Contains("antisymmetry"), Error);
  try {
    Frame::validate("bad", {"a", "b"}, t);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::NotPartialOrder);
  }
}

TEST_CASE("validate rejects broken transitivity") {
  std::vector<std::vector<bool>> t(3, std::vector<bool>(3, false));
  for (int i = 0; i < 3; ++i) t[i][i] = true;
  t[0][1] = t[1][2] = true;  // missing 0 <= 2
  try {
    Frame::validate("bad", {"a", "b", "c"}, t);
    FAIL("expected NotPartialOrder");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::NotPartialOrder);
    CHECK(std::string(e.what()).find("transitivity") != std::string::npos);
  }
}

TEST_CASE("validate rejects missing joins") {
  // two incomparable points, no top
  std::vector<std::vector<bool>> t = {{true, false}, {false, true}};
  try {
    Frame::validate("bad", {"x", "y"}, t);
    FAIL("expected NoMeetOrJoin");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::NoMeetOrJoin);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
    CHECK(std::string(e.what()).find("y") != std::string::npos);
  }
}

TEST_CASE("validate rejects M3") {
  // bot, three incomparable atoms, top: a lattice but not distributive
  auto t = closure(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  try {
    Frame::validate("m3", {"bot", "p", "q", "r", "top"}, t);
    FAIL("expected NotDistributive");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::NotDistributive);
  }
}

TEST_CASE("validate rejects N5") {
  // pentagon: bot < a < c < top, bot < b < top, a,b and c,b incomparable
  auto t = closure(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
  try {
    Frame::validate("n5", {"bot", "a", "c", "b", "top"}, t);
    FAIL("expected NotDistributive");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::NotDistributive);
  }
}

TEST_CASE("sup and inf over families") {
  auto f = Frame::chain(3);
  auto h = *f->by_name("1");
  CHECK(f->sup({}) == f->bot());
  CHECK(f->inf({}) == f->top());
  std::vector<FrameElem> s = {f->bot(), h};
  CHECK(f->sup(s) == h);
  CHECK(f->inf(s) == f->bot());

  auto b = Frame::boolean(2);
  std::vector<FrameElem> atoms = {*b->by_name("b01"), *b->by_name("b10")};
  CHECK(b->sup(atoms) == b->top());
  CHECK(b->inf(atoms) == b->bot());
}

TEST_CASE("frame mismatch is rejected") {
  auto f = Frame::chain(2);
  auto g = Frame::chain(2);
  try {
    f->meet(f->top(), g->top());
    FAIL("expected FrameMismatch");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::FrameMismatch);
  }
}

TEST_CASE("lattice laws hold exhaustively") {
  for (auto f : {Frame::chain(4), Frame::boolean(2), Frame::boolean(3)}) {
    auto es = f->elements();
    for (auto a : es)
      for (auto b : es) {
        CHECK(f->meet(a, b) == f->meet(b, a));
        CHECK(f->join(a, b) == f->join(b, a));
        CHECK(f->meet(a, f->join(a, b)) == a);  // absorption
        CHECK(f->join(a, f->meet(a, b)) == a);
        for (auto c : es) {
          CHECK(f->meet(a, f->meet(b, c)) == f->meet(f->meet(a, b), c));
          CHECK(f->join(a, f->join(b, c)) == f->join(f->join(a, b), c));
          CHECK(f->meet(a, f->join(b, c)) ==
                f->join(f->meet(a, b), f->meet(a, c)));
        }
      }
    for (auto a : es) {
      CHECK(f->meet(a, a) == a);
      CHECK(f->meet(a, f->top()) == a);
      CHECK(f->join(a, f->bot()) == a);
    }
  }
}

TEST_CASE("frame law over all subsets") {
  for (auto f : {Frame::chain(3), Frame::boolean(2)}) {
    for (auto a : f->elements())
      for (const auto& s : subsets(*f)) {
        std::vector<FrameElem> met;
        for (auto x : s) met.push_back(f->meet(a, x));
        CHECK(f->meet(a, f->sup(s)) == f->sup(met));
      }
  }
}

TEST_CASE("sup agrees with folded joins in any order") {
  auto f = Frame::boolean(2);
  auto es = f->elements();
  std::vector<FrameElem> s = {es[1], es[2], es[3]};
  std::sort(s.begin(), s.end());
  do {
    FrameElem acc = f->bot();
    for (auto x : s) acc = f->join(acc, x);
    CHECK(acc == f->sup(s));
  } while (std::next_permutation(s.begin(), s.end()));
}
