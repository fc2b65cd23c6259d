#pragma once

#include "betatile/field.hpp"

#include <set>

namespace betatile {

// one step of the greedy beta-transformation on [0,1)
FieldElement t_step(const FieldElement& x);

// first n greedy digits of x in [0,1)
std::vector<int> greedy_expansion(const FieldElement& x, int n);

// Quasi-greedy successor of the left limits: T^{k+1}(1-) from T^k(1-).
FieldElement t_left_limit_step(const FieldElement& u);

// Integer row-style Hermite normal form; returns the nonzero rows (basis).
std::vector<std::vector<Int>> hermite_basis(std::vector<std::vector<Int>> rows);

struct ParryData {
    const BetaField* field;
    std::vector<int> d_one;           // greedy expansion digits of 1
    bool d_one_finite;                // true for simple Parry numbers
    int d_one_preperiod, d_one_period;  // structure when infinite
    std::vector<int> quasi_preperiod, quasi_period;  // quasi-greedy d*(1)

    std::vector<FieldElement> V;      // sorted ascending, starts at 0
    std::vector<FieldElement> V_hat;  // sorted ascending, ends at 1
    std::vector<int> successor;       // V[i] -> index into V_hat of its hat

    std::vector<std::vector<Int>> L_basis;  // HNF rows, coefficient vectors
    int L_rank;
    bool qm_holds;

    const FieldElement& hat(int v_index) const { return V_hat[successor[v_index]]; }
    // index of max { v in V : v <= x } for x in [0,1)
    int v_floor_index(const FieldElement& x) const;
    // is x in the module L = <V_hat - V_hat>_Z?
    bool in_L(const FieldElement& x) const;
};

ParryData parry_data(const BetaField& field, int orbit_cap = 10000);

// all (a+x)/beta in [0,1), a in the alphabet; optionally restricted to Z[beta]
std::vector<FieldElement> t_preimages(const FieldElement& x, bool restrict_integral);

struct BetaIntegers {
    std::vector<FieldElement> values;      // first n beta-integers, ascending
    std::vector<FieldElement> distances;   // the substitution word prefix (n-1 letters)
};

// First n nonnegative beta-integers and the distance word, via the fixed
// point of the beta-substitution on the alphabet V_hat.
BetaIntegers beta_integers(const ParryData& parry, int n);

}  // namespace betatile
