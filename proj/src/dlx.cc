#include "pk/dlx.hh"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pk/errors.hh"

namespace pk {

DlxMatrix::DlxMatrix(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw domain_error("dlx: no rows");
  long total = 1 + static_cast<long>(rows.size());
  for (const auto& row : rows) total += static_cast<long>(row.size());

  L_.resize(total);
  R_.resize(total);
  U_.resize(total);
  D_.resize(total);
  H_.resize(total);
  var_.assign(total, -1);
  row_.assign(total, -1);

  /* Root: a header column of its own until rows are linked in. */
  L_[0] = R_[0] = U_[0] = D_[0] = H_[0] = 0;

  int next = 1;
  std::map<int, std::vector<int>> by_var;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) empty_row_ = true;
    std::set<int> seen;
    for (int v : rows[r]) {
      if (v < 0) throw domain_error("dlx: negative variable id");
      if (!seen.insert(v).second)
        throw domain_error("dlx: duplicate variable in a row");
    }

    int h = next++;
    headers_.push_back(h);
    row_[h] = static_cast<long>(r);
    H_[h] = h;

    /* Append the header to the column anchored at the root. */
    U_[h] = U_[0];
    D_[h] = 0;
    D_[U_[0]] = h;
    U_[0] = h;

    /* The row's horizontal circle: header, then entries in input order. */
    L_[h] = R_[h] = h;
    for (int v : rows[r]) {
      int n = next++;
      var_[n] = v;
      row_[n] = static_cast<long>(r);
      H_[n] = h;
      L_[n] = L_[h];
      R_[n] = h;
      R_[L_[h]] = n;
      L_[h] = n;
      by_var[v].push_back(n);
    }
  }

  /* Vertical circles per variable, no sentinel nodes. */
  for (const auto& [v, nodes] : by_var) {
    size_t m = nodes.size();
    for (size_t i = 0; i < m; ++i) {
      D_[nodes[i]] = nodes[(i + 1) % m];
      U_[nodes[i]] = nodes[(i + m - 1) % m];
    }
  }
}

long DlxMatrix::entry_count() const {
  return node_count() - 1 - row_count();
}

int DlxMatrix::header(long row) const {
  if (row < 0 || row >= row_count()) throw domain_error("dlx: bad row id");
  return headers_[row];
}

bool DlxMatrix::row_live(long row) const {
  int h = header(row);
  for (int n = D_[0]; n != 0; n = D_[n])
    if (n == h) return true;
  return false;
}

std::vector<long> DlxMatrix::live_rows() const {
  std::vector<long> out;
  for (int n = D_[0]; n != 0; n = D_[n]) out.push_back(row_[n]);
  return out;
}

std::vector<int> DlxMatrix::live_row_vars(long row) const {
  int h = header(row);
  std::vector<int> out;
  for (int n = R_[h]; n != h; n = R_[n]) out.push_back(var_[n]);
  return out;
}

void DlxMatrix::cover(int n) {
  cover_stack_.push_back(n);
  D_[U_[n]] = D_[n];
  U_[D_[n]] = U_[n];
  for (int i = R_[n]; i != n; i = R_[i])
    for (int j = U_[i]; j != i; j = U_[j]) {
      L_[R_[j]] = L_[j];
      R_[L_[j]] = R_[j];
    }
}

void DlxMatrix::uncover(int n) {
  if (cover_stack_.empty() || cover_stack_.back() != n)
    throw std::logic_error("dlx: uncover out of cover order");
  cover_stack_.pop_back();
  for (int i = L_[n]; i != n; i = L_[i])
    for (int j = D_[i]; j != i; j = D_[j]) {
      L_[R_[j]] = j;
      R_[L_[j]] = j;
    }
  U_[D_[n]] = n;
  D_[U_[n]] = n;
}

int DlxMatrix::pick_row(RowPolicy policy) const {
  if (policy == RowPolicy::first_row) return D_[0];
  int best = -1;
  long best_size = -1;
  for (int h = D_[0]; h != 0; h = D_[h]) {
    long size = 0;
    for (int n = R_[h]; n != h; n = R_[n]) ++size;
    if (best < 0 || size < best_size) {
      best = h;
      best_size = size;
    }
  }
  return best;
}

bool DlxMatrix::search_rec(RowPolicy policy, std::vector<int>* out) {
  if (D_[0] == 0) {
    out->clear();
    for (int n : partial_) out->push_back(var_[n]);
    std::sort(out->begin(), out->end());
    return true;
  }
  int r = pick_row(policy);
  cover(r);
  bool found = false;
  for (int n = R_[r]; n != r; n = R_[n]) {
    partial_.push_back(n);
    for (int j = U_[n]; j != n; j = U_[j]) cover(H_[j]);
    found = search_rec(policy, out);
    for (int j = D_[n]; j != n; j = D_[j]) uncover(H_[j]);
    partial_.pop_back();
    if (found) break;
  }
  uncover(r);
  return found;
}

std::optional<std::vector<int>> DlxMatrix::search(RowPolicy policy) {
  if (empty_row_) return std::nullopt;
  std::vector<int> out;
  partial_.clear();
  if (search_rec(policy, &out)) return out;
  return std::nullopt;
}

std::string fix_and_reduce(const Milp& milp, const std::vector<int>& y0) {
  std::set<int> chosen(y0.begin(), y0.end());
  if (chosen.size() != y0.size())
    throw domain_error("fix_and_reduce: repeated id in the partition solution");
  for (int id : chosen)
    if (id < 1 || id > milp.ny)
      throw domain_error("fix_and_reduce: partition solution id out of range");
  for (const auto& row : milp.partition) {
    long hits = 0;
    for (int id : row) hits += chosen.count(id);
    if (hits != 1)
      throw domain_error(
          "fix_and_reduce: solution does not satisfy a partition row exactly "
          "once");
  }

  std::ostringstream out;
  out << "OBJECTIVE\n";
  for (long j = 0; j < milp.nx; ++j)
    out << (j ? " " : "") << rat_to_string(milp.cx[j]);
  out << "\n";
  out << "CONSTRAINTS\n";
  for (size_t i = 0; i < milp.A.size(); ++i) {
    Rational rhs = milp.b[i];
    for (int id : chosen) rhs -= milp.B[i][id - 1];
    for (long j = 0; j < milp.nx; ++j)
      out << (j ? " " : "") << rat_to_string(milp.A[i][j]);
    out << " <= " << rat_to_string(rhs) << "\n";
  }
  out << "INTEGERS\n";
  for (size_t j = 0; j < milp.integer_x.size(); ++j)
    out << (j ? " " : "") << milp.integer_x[j];
  out << "\n";
  return out.str();
}

}  // namespace pk
