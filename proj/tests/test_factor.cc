#include "doctest.h"
#include "maidkit/factor.h"

using namespace maidkit;

TEST_CASE("cpd factors follow parent order, not index order") {
  // Child 1 with parents (3, 0): cards 3 and 2.
  Cpd c(1, {3, 0}, {3, 2}, 2);
  for (int r = 0; r < c.num_rows(); ++r) {
    double p = 0.1 * (r + 1);
    c.SetRow(r, std::vector<double>{p, 1 - p});
  }
  Factor f = Factor::FromCpd(c);
  REQUIRE(f.vars() == NodeSet{0, 1, 3});
  for (int v3 = 0; v3 < 3; ++v3) {
    for (int v0 = 0; v0 < 2; ++v0) {
      std::vector<int> pv{v3, v0};
      int row = c.RowIndex(pv);
      for (int x = 0; x < 2; ++x) {
        CHECK(f.At({v0, x, v3}) == c.at(row, x));
      }
    }
  }
}

TEST_CASE("multiply, sum out and reduce") {
  Factor a({0, 1}, {2, 2}, {1, 2, 3, 4});
  Factor b({1, 2}, {2, 3}, {1, 0, 2, 0, 1, 1});
  Factor ab = Multiply(a, b);
  REQUIRE(ab.vars() == NodeSet{0, 1, 2});
  CHECK(ab.At({1, 1, 2}) == 4 * 1);
  CHECK(ab.At({0, 0, 2}) == 1 * 2);
  Factor s = SumOut(ab, 1);
  CHECK(s.vars() == NodeSet{0, 2});
  CHECK(s.At({0, 0}) == 1 * 1 + 2 * 0);
  CHECK(s.At({1, 2}) == 3 * 2 + 4 * 1);
  Factor r = Reduce(ab, 2, 1);
  CHECK(r.vars() == NodeSet{0, 1});
  CHECK(r.At({1, 1}) == 4 * 1);
  CHECK(SumOut(a, 7).vars() == a.vars());
  Factor unit;
  CHECK(Multiply(unit, a).values() == a.values());
  Factor n = a;
  CHECK(n.Normalize() == 10);
  CHECK(n.At({1, 1}) == doctest::Approx(0.4));
}
