#pragma once

#include <fp/zring.hpp>

#include <map>
#include <vector>

namespace fp {

// One raw summand of the degree-zero Laurent coefficient expansion on P^n:
// an index subset J of {0..n}, the power l' of log(||s||^2/||s_J||^2), one
// composition (l_1..l_|J|) with parts >= -1 summing to -l', and the
// Fubini-Study power n-|J|.  The rational multiplicity carries the
// (fs_power+1) prefactor together with 1/l'!, and after symmetry reduction
// also the orbit size.
struct Term {
    int n = 0;
    std::vector<int> subset;       // J, sorted
    int log_power = 0;             // l'
    std::vector<int> composition;  // one entry per subset slot
    int fs_power = 0;
    Rational multiplicity;

    bool composition_ok() const;
    std::string to_json_string() const;
};

// Complete raw term list for mu_0 on P^n.
std::vector<Term> generate_terms(int n);

// Collapse the S_{n+1} coordinate-permutation action: terms with the same
// (|J|, l', composition multiset) pair to equal values against 1, so one
// representative per class carries the summed multiplicity.  Representatives
// use J = {1..k} and the composition sorted descending.
std::vector<Term> symmetry_reduce(const std::vector<Term>& terms);

// Fully reduced integrable summand: an integral over the intersection of the
// divisor components in `restricted` (isomorphic to P^{n-|restricted|}) of
//   prod_j log^{p_j}||Z_j||^2  ^  (dbar-marked 1-forms)  ^  (del-marked
//   1-forms)  ^  omega_FS^fs_power,
// with the 1-forms dbar log||Z_c||^2 / d log||Z_a||^2 wedged in the canonical
// order "all dbar factors by index, then all del factors by index".  The
// constant prefactor is coef * pi^pi_pow * i^i_pow.
struct ReducedTerm {
    int n = 0;
    std::vector<int> restricted;
    std::map<int, int> log_pow;
    std::vector<int> dbar_marks;
    std::vector<int> del_marks;
    int fs_power = 0;
    Rational coef;
    int pi_pow = 0;
    int i_pow = 0;  // mod 4

    int ambient_dim() const { return n - static_cast<int>(restricted.size()); }
    std::string to_json_string() const;
};

// Rewrites one term into a list of integrable reduced terms: mu_{-1} slots
// restrict to their divisors (constant pi each), mu_l slots split into their
// two explicit pieces, and the resulting d-dbar currents are eliminated by
// one-sided Stokes transfers whose direction alternates so that no index
// ever accumulates both a d and a dbar factor.  Throws if a transfer cannot
// be placed (does not occur for n <= 3; guarded).
std::vector<ReducedTerm> reduce_term(const Term& t);

// <mu_{-n}, 1> from the expansion route: subsets of size n with all
// compositions (-1,...,-1) restrict to single reduced points, pi^n each.
ZetaExpr leading_coefficient(int n);

}  // namespace fp
