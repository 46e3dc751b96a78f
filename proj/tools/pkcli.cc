#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pk/dlx.hh"
#include "pk/errors.hh"
#include "pk/handelman.hh"
#include "pk/integrate.hh"
#include "pk/io.hh"
#include "pk/knapsack.hh"
#include "pk/optimize.hh"
#include "pk/polyhedra.hh"
#include "pk/polynomial.hh"
#include "pk/stepfun.hh"

using namespace pk;

namespace {

struct Common {
  std::string out_path;
  int jobs = 1;
  long seed = 0;  // reorders diagnostics only; results never depend on it
};

void emit(const Common& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out_path);
  if (!out) throw parse_error("cannot open output file: " + c.out_path);
  out << text;
}

Polytope load_polytope(const std::string& path) {
  return parse_hrep(read_text_file(path));
}

SparsePolynomial load_poly(const std::string& path, int dim) {
  return parse_polynomial(read_text_file(path), dim);
}

IntegrationMethod method_of(const std::string& name) {
  if (name == "triangulation") return IntegrationMethod::triangulation;
  if (name == "cone-decomposition") return IntegrationMethod::cone_decomposition;
  throw parse_error("unknown method '" + name + "'");
}

/* Single integral entry point: "both" runs the two routes and insists they
 * agree before reporting the value. */
Rational integral_value(const Polytope& P, const SparsePolynomial& f,
                        const std::string& method, int jobs) {
  if (method == "both") {
    Rational tri =
        integrate_polynomial(P, f, IntegrationMethod::triangulation, jobs);
    Rational cone =
        integrate_polynomial(P, f, IntegrationMethod::cone_decomposition, jobs);
    if (tri != cone)
      throw std::runtime_error("integration routes disagree: " +
                               rat_to_string(tri) + " vs " +
                               rat_to_string(cone));
    return tri;
  }
  return integrate_polynomial(P, f, method_of(method), jobs);
}

SparsePolynomial constant_one(int dim) {
  SparsePolynomial one(dim);
  one.insert(ExpVec(static_cast<size_t>(dim), 0), Rational(1));
  return one;
}

std::string step_poly_lines(const TopKQuasiPolynomial& q) {
  std::ostringstream out;
  for (auto it = q.coeff.rbegin(); it != q.coeff.rend(); ++it)
    out << "E[" << it->first << "] = " << it->second.to_string() << "\n";
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Exact integration, bounds, knapsack coefficients, and "
               "set-partition search over rational data"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--out", common.out_path, "write the result here instead of stdout");
  app.add_option("--jobs", common.jobs, "worker threads for the parallel reductions")
      ->check(CLI::Range(1, 64));
  app.add_option("--seed", common.seed,
                 "diagnostic ordering seed; never changes results");

  std::string polytope_path, poly_path, knap_path, sp_path, milp_path;
  std::string method = "both";
  int degree = 2;
  int k = 0;
  bool force_shift_zero = false;
  bool discrete = false;
  std::string t_text = "0";
  std::string policy = "fewest";

  CLI::App* c_integrate = app.add_subcommand(
      "integrate", "integral of a polynomial over a polytope");
  c_integrate->add_option("--polytope", polytope_path)->required();
  c_integrate->add_option("--poly", poly_path)->required();
  c_integrate->add_option("--method", method)
      ->check(CLI::IsMember({"both", "triangulation", "cone-decomposition"}));

  CLI::App* c_volume = app.add_subcommand("volume", "volume of a polytope");
  c_volume->add_option("--polytope", polytope_path)->required();
  c_volume->add_option("--method", method)
      ->check(CLI::IsMember({"both", "triangulation", "cone-decomposition"}));

  CLI::App* c_handelman = app.add_subcommand(
      "handelman", "positive combination of facet products equal to f + shift");
  c_handelman->add_option("--polytope", polytope_path)->required();
  c_handelman->add_option("--poly", poly_path)->required();
  c_handelman->add_option("--degree", degree)->check(CLI::Range(0, 64));
  c_handelman->add_flag("--force-shift-zero", force_shift_zero);

  CLI::App* c_bounds = app.add_subcommand(
      "bounds", "norm-root bounds on the maximum of f over a polytope");
  c_bounds->add_option("--polytope", polytope_path)->required();
  c_bounds->add_option("--poly", poly_path)->required();
  c_bounds->add_option("-k,--k", k)->required()->check(CLI::Range(1, 1024));
  c_bounds->add_flag("--discrete", discrete,
                     "bound over the lattice points of a box instead");

  CLI::App* c_topk = app.add_subcommand(
      "topk", "leading quasi-polynomial coefficients of a knapsack counter");
  c_topk->add_option("--knapsack", knap_path)->required();
  c_topk->add_option("-k,--k", k)->required()->check(CLI::Range(0, 16));

  CLI::App* c_eval = app.add_subcommand(
      "evaluate", "evaluate the recovered leading terms at an integer");
  c_eval->add_option("--knapsack", knap_path)->required();
  c_eval->add_option("-k,--k", k)->required()->check(CLI::Range(0, 16));
  c_eval->add_option("-t,--t", t_text)->required();

  CLI::App* c_cosets = app.add_subcommand(
      "coset-polys", "full per-residue polynomial listing of a knapsack counter");
  c_cosets->add_option("--knapsack", knap_path)->required();

  CLI::App* c_dlx = app.add_subcommand(
      "dlx", "set-partition search; with --milp, fix-and-reduce emission");
  CLI::Option* o_sp = c_dlx->add_option("--file", sp_path);
  CLI::Option* o_milp = c_dlx->add_option("--milp", milp_path);
  o_sp->excludes(o_milp);
  c_dlx->add_option("--policy", policy)
      ->check(CLI::IsMember({"fewest", "first"}));

  /* --out/--jobs/--seed live on the parent; let every subcommand pass
   * unmatched flags up to it. */
  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*c_integrate) {
    Polytope P = load_polytope(polytope_path);
    SparsePolynomial f = load_poly(poly_path, P.dim());
    Rational v = integral_value(P, f, method, common.jobs);
    emit(common, rat_to_string(v, true) + "\n");
  } else if (*c_volume) {
    Polytope P = load_polytope(polytope_path);
    Rational v = integral_value(P, constant_one(P.dim()), method, common.jobs);
    emit(common, rat_to_string(v, true) + "\n");
  } else if (*c_handelman) {
    Polytope P = load_polytope(polytope_path);
    SparsePolynomial f = load_poly(poly_path, P.dim());
    HandelmanDecomposition D =
        handelman_decompose(f, P, degree, force_shift_zero);
    std::ostringstream out;
    out << "DEGREE " << D.degree << "\n";
    out << "SHIFT " << rat_to_string(D.shift, true) << "\n";
    for (const auto& [alpha, coeff] : D.terms) {
      out << "TERM";
      for (int e : alpha) out << " " << e;
      out << " : " << rat_to_string(coeff, true) << "\n";
    }
    emit(common, out.str());
  } else if (*c_bounds) {
    Polytope P = load_polytope(polytope_path);
    SparsePolynomial f = load_poly(poly_path, P.dim());
    std::ostringstream out;
    if (discrete) {
      auto [lo, hi] = discrete_bounds_box(f, P, k);
      out << "LK " << rat_to_string(radical_decimal(lo, 50), true) << " "
          << radical_to_string(lo, 12) << "\n";
      out << "UK " << rat_to_string(radical_decimal(hi, 50), true) << " "
          << radical_to_string(hi, 12) << "\n";
    } else {
      BoundsReport rep = continuous_bounds(f, P, k, common.jobs);
      out << "K " << rep.k << "\n";
      out << "K0 " << rep.k0 << "\n";
      out << "LK " << rat_to_string(rep.L_k, true) << " "
          << rat_to_decimal(rep.L_k, 12) << "\n";
      out << "UK " << rat_to_string(rep.U_k, true) << " "
          << rat_to_decimal(rep.U_k, 12) << "\n";
    }
    emit(common, out.str());
  } else if (*c_topk) {
    std::vector<Int> a = parse_knapsack_text(read_text_file(knap_path));
    TopKQuasiPolynomial q = top_coefficients(a, k, common.jobs);
    emit(common, step_poly_lines(q));
  } else if (*c_eval) {
    std::vector<Int> a = parse_knapsack_text(read_text_file(knap_path));
    Int t;
    try {
      t = Int(t_text);
    } catch (const std::exception&) {
      throw parse_error("bad integer for -t: '" + t_text + "'");
    }
    TopKQuasiPolynomial q = top_coefficients(a, k, common.jobs);
    emit(common, rat_to_string(evaluate_topk(q, t), true) + "\n");
  } else if (*c_cosets) {
    std::vector<Int> a = parse_knapsack_text(read_text_file(knap_path));
    auto rows = coset_polynomials(a);
    std::ostringstream out;
    for (size_t rho = 0; rho < rows.size(); ++rho) {
      out << "COSET " << rho << " :";
      for (const auto& c : rows[rho]) out << " " << rat_to_string(c);
      out << "\n";
    }
    emit(common, out.str());
  } else if (*c_dlx) {
    if (!o_sp->count() && !o_milp->count())
      throw parse_error("dlx needs --file or --milp");
    auto pol = policy == "first" ? DlxMatrix::RowPolicy::first_row
                                 : DlxMatrix::RowPolicy::fewest_nodes;
    if (o_sp->count()) {
      DlxMatrix m(parse_set_partition(read_text_file(sp_path)));
      auto sol = m.search(pol);
      if (!sol) {
        std::cerr << "dlx: the system is infeasible\n";
        return 3;
      }
      std::ostringstream out;
      out << "SOLUTION";
      for (int v : *sol) out << " x" << v;
      out << "\n";
      emit(common, out.str());
    } else {
      Milp milp = parse_milp(read_text_file(milp_path));
      DlxMatrix m(milp.partition);
      auto sol = m.search(pol);
      if (!sol) {
        std::cerr << "dlx: the partition block is infeasible, so the problem "
                     "is infeasible; nothing emitted\n";
        return 3;
      }
      emit(common, fix_and_reduce(milp, *sol));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
