#include "pk/polynomial.hh"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pk {

SparsePolynomial::SparsePolynomial(int dim, int leaf_capacity)
    : dim_(dim), cap_(leaf_capacity) {
  if (dim < 0) throw domain_error("polynomial dimension must be nonnegative");
  if (leaf_capacity < 1) throw domain_error("leaf capacity must be positive");
  nodes_.emplace_back();  // root leaf
}

int SparsePolynomial::find_leaf(const ExpVec& e) const {
  int idx = 0;
  while (nodes_[idx].var >= 0) {
    const auto& kids = nodes_[idx].kids;
    auto it = kids.find(e[nodes_[idx].var]);
    if (it == kids.end()) return -idx - 1;  // insertion point encoded
    idx = it->second;
  }
  return idx;
}

void SparsePolynomial::burst(int idx) {
  /* First variable whose exponents differ within the leaf; entries are
   * distinct vectors, so one exists whenever the leaf holds two or more. */
  auto entries = std::move(nodes_[idx].entries);
  int split = -1;
  for (int v = 0; v < dim_ && split < 0; ++v) {
    for (size_t i = 1; i < entries.size(); ++i)
      if (entries[i].first[v] != entries[0].first[v]) {
        split = v;
        break;
      }
  }
  if (split < 0) {
    nodes_[idx].entries = std::move(entries);  // single duplicate-free entry
    return;
  }
  nodes_[idx].var = split;
  nodes_[idx].entries.clear();
  for (auto& ent : entries) {
    int key = ent.first[split];
    auto it = nodes_[idx].kids.find(key);
    if (it == nodes_[idx].kids.end()) {
      nodes_.emplace_back();
      it = nodes_[idx].kids.emplace(key, static_cast<int>(nodes_.size()) - 1).first;
    }
    auto& leaf = nodes_[it->second].entries;
    leaf.insert(std::upper_bound(leaf.begin(), leaf.end(), ent,
                                 [](const auto& a, const auto& b) {
                                   return a.first < b.first;
                                 }),
                std::move(ent));
  }
}

void SparsePolynomial::insert(const ExpVec& e, const Rational& c) {
  if (static_cast<int>(e.size()) != dim_)
    throw domain_error("exponent arity mismatch");
  for (int x : e)
    if (x < 0) throw domain_error("negative exponent in polynomial");
  if (c == 0) return;
  int idx = find_leaf(e);
  if (idx < 0) {
    int at = -idx - 1;
    nodes_.emplace_back();
    int leaf = static_cast<int>(nodes_.size()) - 1;
    nodes_[at].kids.emplace(e[nodes_[at].var], leaf);
    nodes_[leaf].entries.emplace_back(e, c);
    return;
  }
  auto& entries = nodes_[idx].entries;
  auto it = std::lower_bound(entries.begin(), entries.end(), e,
                             [](const auto& a, const ExpVec& b) {
                               return a.first < b;
                             });
  if (it != entries.end() && it->first == e) {
    it->second += c;
    if (it->second == 0) entries.erase(it);
    return;
  }
  entries.emplace(it, e, c);
  if (static_cast<int>(entries.size()) > cap_) burst(idx);
}

Rational SparsePolynomial::coeff(const ExpVec& e) const {
  if (static_cast<int>(e.size()) != dim_)
    throw domain_error("exponent arity mismatch");
  int idx = find_leaf(e);
  if (idx < 0) return Rational(0);
  const auto& entries = nodes_[idx].entries;
  auto it = std::lower_bound(entries.begin(), entries.end(), e,
                             [](const auto& a, const ExpVec& b) {
                               return a.first < b;
                             });
  if (it != entries.end() && it->first == e) return it->second;
  return Rational(0);
}

void SparsePolynomial::for_each(
    const std::function<void(const ExpVec&, const Rational&)>& fn) const {
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int idx = stack.back();
    stack.pop_back();
    const Node& n = nodes_[idx];
    if (n.var < 0) {
      for (const auto& [e, c] : n.entries) fn(e, c);
    } else {
      for (const auto& [k, child] : n.kids) {
        (void)k;
        stack.push_back(child);
      }
    }
  }
}

long SparsePolynomial::term_count() const {
  long n = 0;
  for_each([&](const ExpVec&, const Rational&) { ++n; });
  return n;
}

long SparsePolynomial::total_degree() const {
  long deg = 0;
  for_each([&](const ExpVec& e, const Rational&) {
    long d = 0;
    for (int x : e) d += x;
    deg = std::max(deg, d);
  });
  return deg;
}

std::vector<std::pair<ExpVec, Rational>> SparsePolynomial::terms_sorted() const {
  std::vector<std::pair<ExpVec, Rational>> out;
  for_each([&](const ExpVec& e, const Rational& c) { out.emplace_back(e, c); });
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Rational SparsePolynomial::evaluate(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw domain_error("evaluation point arity mismatch");
  Rational acc(0);
  for_each([&](const ExpVec& e, const Rational& c) {
    Rational t = c;
    for (int i = 0; i < dim_; ++i)
      if (e[i] != 0) t *= pow_rat(x[i], e[i]);
    acc += t;
  });
  return acc;
}

bool SparsePolynomial::root_is_leaf() const { return nodes_[0].var < 0; }
int SparsePolynomial::root_split_var() const { return nodes_[0].var; }

std::vector<int> SparsePolynomial::root_child_exponents() const {
  std::vector<int> out;
  for (const auto& [k, v] : nodes_[0].kids) {
    (void)v;
    out.push_back(k);
  }
  return out;
}

long SparsePolynomial::leaf_count() const {
  long n = 0;
  for (const auto& node : nodes_)
    if (node.var < 0) ++n;
  return n;
}

long SparsePolynomial::leaf_size_under_root_child(int exponent) const {
  if (nodes_[0].var < 0) return -1;
  auto it = nodes_[0].kids.find(exponent);
  if (it == nodes_[0].kids.end()) return -1;
  const Node& child = nodes_[it->second];
  if (child.var >= 0) return -1;
  return static_cast<long>(child.entries.size());
}

SparsePolynomial add(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.dim() != b.dim()) throw domain_error("polynomial dimension mismatch");
  SparsePolynomial r(a.dim(), a.leaf_capacity());
  a.for_each([&](const ExpVec& e, const Rational& c) { r.insert(e, c); });
  b.for_each([&](const ExpVec& e, const Rational& c) { r.insert(e, c); });
  return r;
}

SparsePolynomial mul(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.dim() != b.dim()) throw domain_error("polynomial dimension mismatch");
  std::map<ExpVec, Rational> acc;
  auto ta = a.terms_sorted(), tb = b.terms_sorted();
  ExpVec e(a.dim());
  for (const auto& [ea, ca] : ta)
    for (const auto& [eb, cb] : tb) {
      for (int i = 0; i < a.dim(); ++i) e[i] = ea[i] + eb[i];
      acc[e] += ca * cb;
    }
  SparsePolynomial r(a.dim(), a.leaf_capacity());
  for (const auto& [ee, cc] : acc) r.insert(ee, cc);
  return r;
}

SparsePolynomial pow_expand(const SparsePolynomial& f, long k) {
  if (k < 0) throw domain_error("pow_expand needs a nonnegative power");
  SparsePolynomial r(f.dim(), f.leaf_capacity());
  r.insert(ExpVec(f.dim(), 0), 1);
  for (long i = 0; i < k; ++i) r = mul(r, f);
  return r;
}

std::vector<PLFTerm> to_linear_forms(const SparsePolynomial& f) {
  std::map<std::pair<std::vector<Rational>, long>, Rational> acc;
  f.for_each([&](const ExpVec& m, const Rational& c) {
    long M = 0;
    for (int x : m) M += x;
    if (M == 0) {
      acc[{std::vector<Rational>(f.dim(), Rational(0)), 0}] += c;
      return;
    }
    Rational scale = c / Rational(factorial(M));
    ExpVec p(m.size(), 0);
    std::vector<Rational> ell(m.size());
    for (;;) {
      /* advance odometer over 0 <= p <= m */
      long psum = 0;
      for (int x : p) psum += x;
      if (psum > 0) {
        Rational w = scale;
        if ((M - psum) % 2 != 0) w = -w;
        for (size_t i = 0; i < m.size(); ++i) {
          w *= Rational(binomial(Int(m[i]), p[i]));
          ell[i] = Rational(p[i]);
        }
        acc[{ell, M}] += w;
      }
      size_t i = 0;
      for (; i < p.size(); ++i) {
        if (p[i] < m[i]) {
          ++p[i];
          break;
        }
        p[i] = 0;
      }
      if (i == p.size()) break;
    }
  });
  std::vector<PLFTerm> out;
  for (const auto& [key, c] : acc)
    if (c != 0) out.push_back({c, key.first, key.second});
  return out;
}

Rational evaluate_plf(const std::vector<PLFTerm>& sum,
                      const std::vector<Rational>& x) {
  Rational acc(0);
  for (const auto& term : sum) {
    Rational dot(0);
    for (size_t i = 0; i < x.size(); ++i) dot += term.ell[i] * x[i];
    acc += term.coeff * pow_rat(dot, term.power);
  }
  return acc;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw parse_error(std::string("expected '") + c + "' at offset " +
                        std::to_string(i));
  }
  std::string token() {
    skip();
    size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) ||
                            s[i] == '-' || s[i] == '+' || s[i] == '/'))
      ++i;
    if (start == i) throw parse_error("expected a number at offset " + std::to_string(i));
    return s.substr(start, i - start);
  }
  bool done() {
    skip();
    return i == s.size();
  }
};

}  // namespace

SparsePolynomial parse_polynomial(const std::string& text, int expected_dim) {
  Cursor c{text};
  c.expect('[');
  std::vector<std::pair<ExpVec, Rational>> terms;
  int dim = expected_dim;
  if (!c.eat(']')) {
    do {
      c.expect('[');
      Rational coeff = rat_from_string(c.token());
      c.expect(',');
      c.expect('[');
      ExpVec e;
      if (!c.eat(']')) {
        do {
          std::string t = c.token();
          try {
            e.push_back(std::stoi(t));
          } catch (const std::exception&) {
            throw parse_error("bad exponent: " + t);
          }
        } while (c.eat(','));
        c.expect(']');
      }
      c.expect(']');
      if (dim < 0) dim = static_cast<int>(e.size());
      if (static_cast<int>(e.size()) != dim)
        throw parse_error("inconsistent exponent arity in polynomial");
      for (int x : e)
        if (x < 0) throw parse_error("negative exponent in polynomial");
      terms.emplace_back(std::move(e), std::move(coeff));
    } while (c.eat(','));
    c.expect(']');
  }
  if (!c.done()) throw parse_error("trailing input after polynomial");
  if (dim < 0) dim = 0;
  SparsePolynomial f(dim);
  for (auto& [e, v] : terms) f.insert(e, v);
  return f;
}

std::string print_polynomial(const SparsePolynomial& f) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [e, c] : f.terms_sorted()) {
    if (!first) os << ", ";
    first = false;
    os << "[" << rat_to_string(c) << ", [";
    for (size_t i = 0; i < e.size(); ++i) {
      if (i) os << ", ";
      os << e[i];
    }
    os << "]]";
  }
  os << "]";
  return os.str();
}

}  // namespace pk
