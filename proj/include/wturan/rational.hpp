#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace wturan {

using Rat = mpq_class;
using Int = mpz_class;

/// Reduced fraction num/den; den must be nonzero.
Rat frac(long num, long den);

/// Parse "p/q" or "p" (optional leading sign, decimal digits only).
Rat parse_rat(const std::string& s);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string fmt_rat(const Rat& r);

/// "p/q (~0.526316)" style used by the CLI: exact value plus a 6-place decimal.
std::string fmt_rat_approx(const Rat& r);

Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

/// Best rational approximation of x with denominator <= max_den
/// (continued-fraction convergent/semiconvergent).
Rat best_approx(const Rat& x, const Int& max_den);
Rat round_to_denominator(double x, const Int& max_den);

/// lcm of all denominators; used to clear constraint rows to integers.
Int lcm_denominators(const std::vector<Rat>& vals);

}  // namespace wturan
