#include "betatile/dynamics.hpp"

#include <map>

namespace betatile {

namespace {

void check_unit_domain(const FieldElement& x) {
    if (compare(x, Rat(0)) == Ordering::Less || compare(x, Rat(1)) != Ordering::Less)
        fail(ErrorCode::OutOfDomain, "element not in [0,1)");
}

}  // namespace

FieldElement t_step(const FieldElement& x) {
    check_unit_domain(x);
    FieldElement y = x.mul_beta();
    return y - Rat(floor_elem(y));
}

std::vector<int> greedy_expansion(const FieldElement& x, int n) {
    check_unit_domain(x);
    std::vector<int> digits;
    digits.reserve(n);
    FieldElement cur = x;
    for (int i = 0; i < n; ++i) {
        FieldElement y = cur.mul_beta();
        Int a = floor_elem(y);
        digits.push_back(static_cast<int>(a.get_si()));
        cur = y - Rat(a);
    }
    return digits;
}

FieldElement t_left_limit_step(const FieldElement& u) {
    // T(u-) = beta*u - (ceil(beta*u) - 1); the left-limit digit
    FieldElement y = u.mul_beta();
    return y - Rat(ceil_elem(y) - 1);
}

std::vector<std::vector<Int>> hermite_basis(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) return rows;
    size_t cols = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        // eliminate column c below-and-at row r by gcd steps
        while (true) {
            size_t pivot = rows.size();
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 &&
                    (pivot == rows.size() || abs(rows[i][c]) < abs(rows[pivot][c])))
                    pivot = i;
            if (pivot == rows.size()) break;
            std::swap(rows[r], rows[pivot]);
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Int q = rows[i][c] / rows[r][c];
                for (size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (size_t j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
        // reduce entries above the pivot into [0, pivot)
        for (size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

int ParryData::v_floor_index(const FieldElement& x) const {
    int best = -1;
    for (size_t i = 0; i < V.size(); ++i) {
        if (compare(V[i], x) != Ordering::Greater) best = static_cast<int>(i);
        else break;
    }
    if (best < 0) fail(ErrorCode::OutOfDomain, "x below 0, no V floor");
    return best;
}

bool ParryData::in_L(const FieldElement& x) const {
    if (!x.is_integral()) return false;
    // solve against the HNF basis by forward substitution
    int d = field->degree();
    std::vector<Int> v(d);
    for (int i = 0; i < d; ++i) v[i] = x.coeff(i).get_num();
    for (const auto& row : L_basis) {
        int c = 0;
        while (c < d && row[c] == 0) ++c;
        if (c == d) continue;
        if (v[c] % row[c] != 0) return false;
        Int q = v[c] / row[c];
        for (int j = 0; j < d; ++j) v[j] -= q * row[j];
    }
    for (const auto& e : v)
        if (e != 0) return false;
    return true;
}

ParryData parry_data(const BetaField& field, int orbit_cap) {
    ParryData out;
    out.field = &field;

    // greedy expansion of 1 with exact cycle detection
    {
        FieldElement r = field.one();
        std::map<FieldElement, int, FieldElementLess> seen;
        std::vector<int> digits;
        int idx = 0;
        out.d_one_finite = false;
        out.d_one_preperiod = 0;
        out.d_one_period = 0;
        while (true) {
            if (r.is_zero()) {
                out.d_one_finite = true;
                break;
            }
            auto it = seen.find(r);
            if (it != seen.end()) {
                out.d_one_preperiod = it->second;
                out.d_one_period = idx - it->second;
                break;
            }
            seen.emplace(r, idx);
            FieldElement y = r.mul_beta();
            Int a = floor_elem(y);
            digits.push_back(static_cast<int>(a.get_si()));
            r = y - Rat(a);
            ++idx;
            if (idx > orbit_cap)
                fail(ErrorCode::CycleNotFound, "expansion of 1 did not close within cap");
        }
        out.d_one = digits;
    }

    // quasi-greedy d*(1)
    if (out.d_one_finite) {
        std::vector<int> per(out.d_one);
        per.back() -= 1;
        out.quasi_preperiod = {};
        out.quasi_period = per;
    } else {
        out.quasi_preperiod.assign(out.d_one.begin(), out.d_one.begin() + out.d_one_preperiod);
        out.quasi_period.assign(out.d_one.begin() + out.d_one_preperiod, out.d_one.end());
    }

    // orbit of the left limits: V_hat = { T^k(1-) : k >= 0 }
    std::set<FieldElement, FieldElementLess> vhat_set;
    {
        FieldElement u = field.one();
        std::map<FieldElement, int, FieldElementLess> seen;
        int idx = 0;
        while (seen.find(u) == seen.end()) {
            seen.emplace(u, idx++);
            vhat_set.insert(u);
            u = t_left_limit_step(u);
            if (idx > orbit_cap)
                fail(ErrorCode::CycleNotFound, "left-limit orbit did not close within cap");
        }
    }

    std::vector<FieldElement> vhat(vhat_set.begin(), vhat_set.end());
    std::sort(vhat.begin(), vhat.end(),
              [](const FieldElement& a, const FieldElement& b) { return lt(a, b); });
    out.V_hat = vhat;

    for (const auto& u : out.V_hat) {
        if (!u.is_integral())
            fail(ErrorCode::NotIntegral, "left-limit orbit left Z[beta]");
        if (compare(u, Rat(0)) != Ordering::Greater || compare(u, Rat(1)) == Ordering::Greater)
            fail(ErrorCode::OutOfDomain, "left-limit orbit left (0,1]");
    }

    // V = (V_hat u {0}) \ {1}
    out.V.push_back(field.zero());
    for (const auto& u : out.V_hat)
        if (u != field.one()) out.V.push_back(u);
    std::sort(out.V.begin(), out.V.end(),
              [](const FieldElement& a, const FieldElement& b) { return lt(a, b); });

    // successor map: hat(v) = min{ y in V_hat : y > v }
    for (const auto& v : out.V) {
        int s = -1;
        for (size_t j = 0; j < out.V_hat.size(); ++j) {
            if (compare(out.V_hat[j], v) == Ordering::Greater) {
                s = static_cast<int>(j);
                break;
            }
        }
        if (s < 0) fail(ErrorCode::OutOfDomain, "no successor in V_hat");
        out.successor.push_back(s);
    }

    // L = <V_hat - V_hat>_Z, generated by differences against V_hat[0]
    std::vector<std::vector<Int>> gens;
    int d = field.degree();
    for (size_t i = 1; i < out.V_hat.size(); ++i) {
        FieldElement diff = out.V_hat[i] - out.V_hat[0];
        std::vector<Int> row(d);
        for (int j = 0; j < d; ++j) row[j] = diff.coeff(j).get_num();
        gens.push_back(std::move(row));
    }
    out.L_basis = hermite_basis(std::move(gens));
    out.L_rank = static_cast<int>(out.L_basis.size());
    out.qm_holds = (out.L_rank == d - 1);
    return out;
}

std::vector<FieldElement> t_preimages(const FieldElement& x, bool restrict_integral) {
    check_unit_domain(x);
    const BetaField& f = x.field();
    std::vector<FieldElement> out;
    for (int a = 0; a <= f.alphabet_max(); ++a) {
        FieldElement y = (x + Rat(a)).div_beta();
        if (compare(y, Rat(1)) != Ordering::Less) continue;  // y >= 1
        if (restrict_integral && !y.is_integral()) continue;
        out.push_back(y);
    }
    return out;
}

BetaIntegers beta_integers(const ParryData& parry, int n) {
    if (n < 1) fail(ErrorCode::BadParameters, "need n >= 1");
    const BetaField& f = *parry.field;

    // substitution on V_hat: x -> 1^(ceil(beta x)-1) T(x-)
    auto sigma = [&](const FieldElement& x) {
        FieldElement y = x.mul_beta();
        Int reps = ceil_elem(y) - 1;
        std::vector<FieldElement> word(static_cast<size_t>(reps.get_si()), f.one());
        word.push_back(y - Rat(reps));
        return word;
    };

    std::vector<FieldElement> word{f.one()};
    while (static_cast<int>(word.size()) < n - 1) {
        std::vector<FieldElement> next;
        for (const auto& letter : word) {
            auto expanded = sigma(letter);
            next.insert(next.end(), expanded.begin(), expanded.end());
        }
        if (next.size() == word.size())
            fail(ErrorCode::CycleNotFound, "substitution word failed to grow");
        word = std::move(next);
    }

    BetaIntegers out;
    FieldElement acc = f.zero();
    out.values.push_back(acc);
    for (int i = 0; i < n - 1; ++i) {
        out.distances.push_back(word[i]);
        acc = acc + word[i];
        out.values.push_back(acc);
    }
    return out;
}

}  // namespace betatile
