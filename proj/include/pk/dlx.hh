#ifndef PK_DLX_HH
#define PK_DLX_HH

#include <optional>
#include <string>
#include <vector>

#include "pk/rational.hh"

namespace pk {

/* Exact-cover solver for set-partition systems: every row of binary
 * variables must sum to exactly 1. Rows and variables live in a single
 * contiguous node arena wired with five link arrays L, R, U, D, H. Node 0 is
 * the root, the first data node of the header column; it is followed by one
 * header node per row, then by the entry nodes row by row. Row headers hang
 * off the root in a vertical circular list; each row is a horizontal
 * circular list through its header; all entries of one variable form a
 * vertical circular list of their own, and H maps an entry back to its row
 * header.
 *
 * cover splices a row header out of the header column and then removes,
 * from their rows, all other occurrences of the row's live variables.
 * uncover is its exact inverse and must be called in strict last-covered,
 * first-uncovered order; the pairing is guarded by a stack check that
 * throws std::logic_error on misuse, since a violation corrupts links
 * silently. */
class DlxMatrix {
 public:
  enum class RowPolicy { fewest_nodes, first_row };

  /* rows[i] lists the variable ids of row i. Ids must be nonnegative and
   * distinct within a row (all coefficients are 1). The row list itself
   * must be nonempty. A row with no variables is accepted and recorded as
   * an immediate-infeasibility marker: nothing can make it sum to 1. */
  explicit DlxMatrix(const std::vector<std::vector<int>>& rows);

  long row_count() const { return static_cast<long>(headers_.size()); }
  /* Entry nodes only; the root and the row headers are not counted. */
  long entry_count() const;
  long node_count() const { return static_cast<long>(L_.size()); }
  bool has_empty_row() const { return empty_row_; }

  /* Arena index of a row's header node. */
  int header(long row) const;
  int root() const { return 0; }

  bool row_live(long row) const;
  std::vector<long> live_rows() const;
  /* Variables still reachable in the row's horizontal list. The list of a
   * covered row is left intact by its own cover; only other rows lose
   * entries. */
  std::vector<int> live_row_vars(long row) const;

  void cover(int n);
  void uncover(int n);

  /* First solution found, as the sorted variable ids set to 1, or nullopt
   * if exhaustive backtracking finds none. Variables appearing in no row
   * are free and reported as 0 (left out). The matrix is restored to its
   * entry state before returning. */
  std::optional<std::vector<int>> search(
      RowPolicy policy = RowPolicy::fewest_nodes);

  int var_of(int n) const { return var_[n]; }
  long row_of(int n) const { return row_[n]; }

  /* Raw link arrays, for restore checks. */
  const std::vector<int>& left() const { return L_; }
  const std::vector<int>& right() const { return R_; }
  const std::vector<int>& up() const { return U_; }
  const std::vector<int>& down() const { return D_; }
  const std::vector<int>& head() const { return H_; }

 private:
  int pick_row(RowPolicy policy) const;
  bool search_rec(RowPolicy policy, std::vector<int>* out);

  std::vector<int> L_, R_, U_, D_, H_;
  std::vector<int> var_;   // variable id of an entry node, -1 elsewhere
  std::vector<long> row_;  // row id of a header or entry node, -1 for root
  std::vector<int> headers_;
  std::vector<int> cover_stack_;
  std::vector<int> partial_;  // entry nodes currently assigned 1
  bool empty_row_ = false;
};

/* min cx'x + cy'y  s.t.  Ax + By <= b,  Cy = 1,  y binary,
 * x integral on the listed ids. Partition rows and the integrality list
 * use 1-based ids. */
struct Milp {
  long nx = 0;
  long ny = 0;
  std::vector<Rational> cx, cy;
  std::vector<std::vector<Rational>> A, B;
  std::vector<Rational> b;
  std::vector<std::vector<int>> partition;
  std::vector<int> integer_x;
};

/* Plugs a partition solution y0 (1-based ids of the y variables set to 1)
 * into the inequality block and emits the reduced problem
 * min cx'x s.t. Ax <= b - B y0 as sectioned text (OBJECTIVE / CONSTRAINTS /
 * INTEGERS) with exact rational coefficients. Throws domain_error when y0
 * does not satisfy every partition row exactly once. */
std::string fix_and_reduce(const Milp& milp, const std::vector<int>& y0);

}  // namespace pk

#endif
