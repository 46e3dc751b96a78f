#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "pk/dlx.hh"
#include "pk/errors.hh"

using namespace pk;

namespace {

/* The running example: 1 = x2+x4, 1 = x3+x5, 1 = x1+x3, 1 = x1+x2+x3. */
const std::vector<std::vector<int>> kAbcd = {
    {2, 4}, {3, 5}, {1, 3}, {1, 2, 3}};

using Rows = std::vector<std::vector<int>>;

struct Snapshot {
  std::vector<int> L, R, U, D, H;
  explicit Snapshot(const DlxMatrix& m)
      : L(m.left()), R(m.right()), U(m.up()), D(m.down()), H(m.head()) {}
  bool operator==(const Snapshot& o) const {
    return L == o.L && R == o.R && U == o.U && D == o.D && H == o.H;
  }
};

/* Exhaustive feasibility check over the variables that actually appear. */
bool oracle_feasible(const std::vector<std::vector<int>>& rows) {
  std::vector<int> vars;
  for (const auto& row : rows)
    for (int v : row) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  REQUIRE(vars.size() <= 20);

  std::vector<unsigned> masks;
  for (const auto& row : rows) {
    unsigned m = 0;
    for (int v : row) {
      size_t bit = std::lower_bound(vars.begin(), vars.end(), v) - vars.begin();
      m |= 1u << bit;
    }
    masks.push_back(m);
  }
  for (unsigned assign = 0; assign < (1u << vars.size()); ++assign) {
    bool ok = true;
    for (unsigned m : masks)
      if (__builtin_popcount(assign & m) != 1) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

bool satisfies_exactly_once(const std::vector<std::vector<int>>& rows,
                            const std::vector<int>& sol) {
  std::set<int> chosen(sol.begin(), sol.end());
  for (const auto& row : rows) {
    long hits = 0;
    for (int v : row) hits += chosen.count(v);
    if (hits != 1) return false;
  }
  return true;
}

Milp small_milp() {
  Milp m;
  m.nx = 2;
  m.ny = 2;
  m.cx = {Rational(1), make_rat(-3, 2)};
  m.cy = {Rational(0), Rational(0)};
  m.A = {{Rational(1), Rational(2)}, {Rational(0), make_rat(1, 3)}};
  m.B = {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}};
  m.b = {Rational(5), make_rat(7, 2)};
  m.partition = {{1, 2}};
  m.integer_x = {2};
  return m;
}

}  // namespace

TEST_CASE("build wires the documented linked structure") {
  DlxMatrix m(kAbcd);

  /* The root is the first data node of the header column, so the arena
   * holds 4 row headers and 10 data nodes: the root plus 9 entries. */
  CHECK(m.row_count() == 4);
  CHECK(m.node_count() - m.row_count() == 10);
  CHECK(m.entry_count() == 9);
  CHECK_FALSE(m.has_empty_row());

  /* Header column from the root, in input order. */
  CHECK(m.live_rows() == std::vector<long>{0, 1, 2, 3});
  for (long r = 0; r < 4; ++r) {
    CHECK(m.row_live(r));
    CHECK(m.live_row_vars(r) == kAbcd[r]);
    CHECK(m.row_of(m.header(r)) == r);
  }

  /* The x3 entries of rows B, C, D form their own vertical circle, and H
   * points each entry at its row header. */
  int b3 = -1, c3 = -1, d3 = -1;
  for (int n = 0; n < m.node_count(); ++n) {
    if (m.var_of(n) != 3) continue;
    if (m.row_of(n) == 1) b3 = n;
    if (m.row_of(n) == 2) c3 = n;
    if (m.row_of(n) == 3) d3 = n;
  }
  REQUIRE(b3 > 0);
  REQUIRE(c3 > 0);
  REQUIRE(d3 > 0);
  CHECK(m.down()[b3] == c3);
  CHECK(m.down()[c3] == d3);
  CHECK(m.down()[d3] == b3);
  CHECK(m.up()[b3] == d3);
  CHECK(m.head()[b3] == m.header(1));
  CHECK(m.head()[d3] == m.header(3));

  DlxMatrix single(Rows{{1}});
  CHECK(single.entry_count() == 1);
  CHECK(single.row_count() == 1);

  CHECK_THROWS_AS(DlxMatrix(Rows{}), domain_error);
  CHECK_THROWS_AS(DlxMatrix(Rows{{1, 1}}), domain_error);
  CHECK_THROWS_AS(DlxMatrix(Rows{{-1}}), domain_error);

  DlxMatrix marked(Rows{{1}, {}});
  CHECK(marked.has_empty_row());
  CHECK_FALSE(marked.search().has_value());
}

TEST_CASE("cover propagates and uncover restores bit-exactly") {
  DlxMatrix m(kAbcd);
  Snapshot initial(m);

  /* Covering row A removes x2 and x4 from every other row; A's own list
   * stays intact but A leaves the header column. */
  m.cover(m.header(0));
  CHECK(m.live_rows() == std::vector<long>{1, 2, 3});
  CHECK_FALSE(m.row_live(0));
  CHECK(m.live_row_vars(0) == std::vector<int>{2, 4});
  CHECK(m.live_row_vars(1) == std::vector<int>{3, 5});
  CHECK(m.live_row_vars(2) == std::vector<int>{1, 3});
  CHECK(m.live_row_vars(3) == std::vector<int>{1, 3});

  /* Propagating x2 = 1 covers row D, which strips x1 and x3 from the other
   * rows and leaves row C without nodes: the recorded contradiction. */
  m.cover(m.header(3));
  CHECK(m.live_rows() == std::vector<long>{1, 2});
  CHECK(m.live_row_vars(2).empty());
  CHECK(m.live_row_vars(1) == std::vector<int>{5});

  m.uncover(m.header(3));
  m.uncover(m.header(0));
  CHECK(Snapshot(m) == initial);

  /* Covering the last row empties the root list. */
  DlxMatrix single(Rows{{1}});
  single.cover(single.header(0));
  CHECK(single.live_rows().empty());
  single.uncover(single.header(0));
  CHECK(single.live_rows() == std::vector<long>{0});
}

TEST_CASE("uncover enforces last-covered first-uncovered pairing") {
  DlxMatrix m(kAbcd);
  Snapshot initial(m);
  m.cover(m.header(0));
  m.cover(m.header(1));
  CHECK_THROWS_AS(m.uncover(m.header(0)), std::logic_error);
  /* The guard fires before any pointer is touched, so the proper order
   * still restores everything. */
  m.uncover(m.header(1));
  m.uncover(m.header(0));
  CHECK(Snapshot(m) == initial);
}

TEST_CASE("search finds the documented solution and restores the matrix") {
  DlxMatrix m(kAbcd);
  Snapshot initial(m);

  auto sol = m.search();
  REQUIRE(sol.has_value());
  CHECK(*sol == std::vector<int>{3, 4});
  CHECK(Snapshot(m) == initial);

  auto first = m.search(DlxMatrix::RowPolicy::first_row);
  REQUIRE(first.has_value());
  CHECK(*first == std::vector<int>{3, 4});
  CHECK(Snapshot(m) == initial);
}

TEST_CASE("search reports infeasibility after exhaustive backtracking") {
  /* 1 = x1, 1 = x1+x2, 1 = x2 has no solution among the four assignments. */
  DlxMatrix m({{1}, {1, 2}, {2}});
  Snapshot initial(m);
  CHECK_FALSE(m.search().has_value());
  CHECK_FALSE(m.search(DlxMatrix::RowPolicy::first_row).has_value());
  CHECK(Snapshot(m) == initial);

  DlxMatrix single(Rows{{7}});
  auto sol = single.search();
  REQUIRE(sol.has_value());
  CHECK(*sol == std::vector<int>{7});
}

TEST_CASE("random systems agree with exhaustive enumeration") {
  std::mt19937 rng(414243);
  std::uniform_int_distribution<int> nrows_d(1, 8);
  std::uniform_int_distribution<int> rowlen_d(1, 4);
  std::uniform_int_distribution<int> var_d(1, 12);

  int feasible_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int nrows = nrows_d(rng);
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < nrows; ++r) {
      std::set<int> row;
      int len = rowlen_d(rng);
      while (static_cast<int>(row.size()) < len) row.insert(var_d(rng));
      rows.emplace_back(row.begin(), row.end());
    }

    DlxMatrix m(rows);
    Snapshot initial(m);
    auto sol = m.search();
    CHECK(sol.has_value() == oracle_feasible(rows));
    if (sol) {
      CHECK(satisfies_exactly_once(rows, *sol));
      ++feasible_seen;
    }
    CHECK(Snapshot(m) == initial);

    /* The selection policy may change the solution, not the verdict. */
    auto other = m.search(DlxMatrix::RowPolicy::first_row);
    CHECK(other.has_value() == sol.has_value());
    if (other) CHECK(satisfies_exactly_once(rows, *other));
  }
  CHECK(feasible_seen > 20);
}

TEST_CASE("fix_and_reduce emits the reduced problem") {
  Milp m = small_milp();
  std::string text = fix_and_reduce(m, {1});
  CHECK(text ==
        "OBJECTIVE\n"
        "1 -3/2\n"
        "CONSTRAINTS\n"
        "1 2 <= 5\n"
        "0 1/3 <= 7/2\n"
        "INTEGERS\n"
        "2\n");

  /* No y-coupling: constraints unchanged whichever y is picked. */
  CHECK(fix_and_reduce(m, {2}) == text);

  /* Identity coupling decrements the matching right-hand side. */
  Milp ident = small_milp();
  ident.B = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  std::string r1 = fix_and_reduce(ident, {1});
  CHECK(r1.find("1 2 <= 4\n") != std::string::npos);
  CHECK(r1.find("0 1/3 <= 7/2\n") != std::string::npos);
  std::string r2 = fix_and_reduce(ident, {2});
  CHECK(r2.find("1 2 <= 5\n") != std::string::npos);
  CHECK(r2.find("0 1/3 <= 5/2\n") != std::string::npos);

  CHECK_THROWS_AS(fix_and_reduce(m, {}), domain_error);
  CHECK_THROWS_AS(fix_and_reduce(m, std::vector<int>{1, 2}), domain_error);
  CHECK_THROWS_AS(fix_and_reduce(m, {5}), domain_error);
  CHECK_THROWS_AS(fix_and_reduce(m, std::vector<int>{1, 1}), domain_error);
}

TEST_CASE("partition solutions feed the reducer") {
  /* y-side system: 1 = y1+y4, 1 = y2+y3, 1 = y1+y2. */
  Milp m;
  m.nx = 1;
  m.ny = 4;
  m.cx = {Rational(2)};
  m.cy = {Rational(0), Rational(0), Rational(0), Rational(0)};
  m.A = {{Rational(1)}};
  m.B = {{Rational(1), Rational(2), Rational(4), Rational(8)}};
  m.b = {Rational(20)};
  m.partition = {{1, 4}, {2, 3}, {1, 2}};
  m.integer_x = {1};

  DlxMatrix dlx(m.partition);
  auto sol = dlx.search();
  REQUIRE(sol.has_value());
  CHECK(satisfies_exactly_once(m.partition, *sol));
  std::string text = fix_and_reduce(m, *sol);
  /* y = {1,3}: rhs = 20 - 1 - 4; y = {2,4}: rhs = 20 - 2 - 8. */
  bool a = text.find("1 <= 15\n") != std::string::npos;
  bool b = text.find("1 <= 10\n") != std::string::npos;
  CHECK((a || b));

  /* An infeasible partition block yields no solution to plug in. */
  DlxMatrix bad({{1}, {1, 2}, {2}});
  CHECK_FALSE(bad.search().has_value());
}
