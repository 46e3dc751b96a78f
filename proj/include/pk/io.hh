#ifndef PK_IO_HH
#define PK_IO_HH

#include <string>
#include <vector>

#include "pk/dlx.hh"
#include "pk/rational.hh"

namespace pk {

/* Whole file as a string; parse_error when unreadable. */
std::string read_text_file(const std::string& path);

/* "k" on the first line, then k space-separated positive integers. */
std::vector<Int> parse_knapsack_text(const std::string& text);

/* "R V" on the first line, then R lines of variable ids in 1..V. A blank
 * row line is kept as an empty row (an unsatisfiable marker downstream). */
std::vector<std::vector<int>> parse_set_partition(const std::string& text);

/* One token, integer or "p/q", to an exact rational. */
Rational parse_rational_token(const std::string& tok);

/* Sectioned MILP text. '#' starts a comment, blank lines are skipped.
 *   NX <count>            x variables
 *   NY <count>            binary y variables
 *   OBJECTIVE cx... | cy...
 *   CONSTRAINT ax... | by... <= rhs     (repeatable)
 *   PARTITION y-ids...                  (repeatable, 1-based)
 *   INTEGERS x-ids...                   (optional, 1-based)
 * NX and NY must precede the lines that depend on them. */
Milp parse_milp(const std::string& text);

}  // namespace pk

#endif
