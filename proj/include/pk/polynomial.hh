#ifndef PK_POLYNOMIAL_HH
#define PK_POLYNOMIAL_HH

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pk/rational.hh"

namespace pk {

using ExpVec = std::vector<int>;

/* Sparse multivariate polynomial stored in a burst trie: internal nodes
 * split on one variable's exponent, leaves hold lexicographically sorted
 * (exponent, coefficient) arrays. A leaf that grows past leaf_capacity
 * bursts on the first variable whose exponents are not all equal within
 * the leaf. */
class SparsePolynomial {
 public:
  explicit SparsePolynomial(int dim, int leaf_capacity = 10);

  int dim() const { return dim_; }
  int leaf_capacity() const { return cap_; }

  /* Accumulating insert; a coefficient that cancels to zero removes the term. */
  void insert(const ExpVec& e, const Rational& c);
  Rational coeff(const ExpVec& e) const;
  long term_count() const;
  long total_degree() const;  // 0 for the zero polynomial
  void for_each(const std::function<void(const ExpVec&, const Rational&)>& fn) const;
  std::vector<std::pair<ExpVec, Rational>> terms_sorted() const;

  Rational evaluate(const std::vector<Rational>& x) const;

  /* Trie introspection (tests). */
  bool root_is_leaf() const;
  int root_split_var() const;  // -1 when the root is a leaf
  std::vector<int> root_child_exponents() const;
  long leaf_count() const;
  long leaf_size_under_root_child(int exponent) const;  // -1 when absent/internal

 private:
  struct Node {
    int var = -1;  // -1: leaf
    std::map<int, int> kids;
    std::vector<std::pair<ExpVec, Rational>> entries;
  };

  int find_leaf(const ExpVec& e) const;
  void burst(int idx);

  int dim_;
  int cap_;
  std::vector<Node> nodes_;
};

SparsePolynomial add(const SparsePolynomial& a, const SparsePolynomial& b);
SparsePolynomial mul(const SparsePolynomial& a, const SparsePolynomial& b);
SparsePolynomial pow_expand(const SparsePolynomial& f, long k);

/* One summand c * <ell, x>^power of a decomposition into powers of linear
 * forms. */
struct PLFTerm {
  Rational coeff;
  std::vector<Rational> ell;
  long power = 0;
};

/* x^m = 1/|m|! sum_{0<=p<=m} (-1)^{|m|-|p|} prod C(m_i,p_i) <p,x>^|m|,
 * merged across monomials; the all-zero p survives only for |m| = 0. */
std::vector<PLFTerm> to_linear_forms(const SparsePolynomial& f);

Rational evaluate_plf(const std::vector<PLFTerm>& sum, const std::vector<Rational>& x);

/* Text format: [[c, [e_1,...,e_d]], ...] with c an integer or "n/m".
 * Printing is sorted and canonical; parse(print(f)) == f. */
SparsePolynomial parse_polynomial(const std::string& text, int expected_dim = -1);
std::string print_polynomial(const SparsePolynomial& f);

}  // namespace pk

#endif
