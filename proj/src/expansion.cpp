#include <fp/expansion.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fp {

using json = nlohmann::json;

bool Term::composition_ok() const {
    int sum = 0;
    for (int l : composition) {
        if (l < -1) return false;
        sum += l;
    }
    return sum == -log_power && composition.size() == subset.size() &&
           fs_power + static_cast<int>(subset.size()) == n;
}

std::string Term::to_json_string() const {
    json j;
    j["n"]            = n;
    j["subset"]       = subset;
    j["log_power"]    = log_power;
    j["composition"]  = composition;
    j["fs_power"]     = fs_power;
    j["multiplicity"] = rational_str(multiplicity);
    return j.dump();
}

std::string ReducedTerm::to_json_string() const {
    json j;
    j["n"]         = n;
    j["ambient"]   = restricted;
    json logs      = json::object();
    for (const auto& [idx, p] : log_pow) logs[std::to_string(idx)] = p;
    j["integrand"] = {{"log_powers", logs},
                      {"dbar_log_factors", dbar_marks},
                      {"d_log_factors", del_marks},
                      {"fs_power", fs_power}};
    j["prefactor"] = {{"coef", rational_str(coef)}, {"pi_pow", pi_pow}, {"i_pow", i_pow}};
    return j.dump();
}

// ---------------------------------------------------------------------------
// Term generation and symmetry reduction
// ---------------------------------------------------------------------------

namespace {

void compositions_rec(int remaining, int slots, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
    if (slots == 0) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    for (int m = 0; m <= remaining; ++m) {
        cur.push_back(m - 1);  // parts are m-1 >= -1
        compositions_rec(remaining - m, slots - 1, cur, out);
        cur.pop_back();
    }
}

// All compositions of -lp into `slots` parts >= -1.
std::vector<std::vector<int>> compositions(int lp, int slots) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    compositions_rec(slots - lp, slots, cur, out);
    return out;
}

void subsets_rec(int next, int max_idx, int want, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == want) {
        out.push_back(cur);
        return;
    }
    for (int i = next; i <= max_idx; ++i) {
        cur.push_back(i);
        subsets_rec(i + 1, max_idx, want, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets_of_size(int max_idx, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets_rec(0, max_idx, k, cur, out);
    return out;
}

}  // namespace

std::vector<Term> generate_terms(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("generate_terms: n must be in [1,5]");
    std::vector<Term> out;
    for (int fs = 0; fs <= n; ++fs) {
        int k = n - fs;
        for (const auto& J : subsets_of_size(n, k)) {
            for (int lp = 0; lp <= k; ++lp) {
                for (const auto& comp : compositions(lp, k)) {
                    Term t;
                    t.n            = n;
                    t.subset       = J;
                    t.log_power    = lp;
                    t.composition  = comp;
                    t.fs_power     = fs;
                    t.multiplicity = Rational(fs + 1) / Rational(factorial(lp));
                    out.push_back(std::move(t));
                }
            }
        }
    }
    return out;
}

std::vector<Term> symmetry_reduce(const std::vector<Term>& terms) {
    std::map<std::pair<int, std::vector<int>>, Term> classes;  // (fs, sorted comp) -> rep
    for (const auto& t : terms) {
        if (!t.composition_ok()) throw std::invalid_argument("symmetry_reduce: malformed term");
        std::vector<int> key = t.composition;
        std::sort(key.begin(), key.end());
        auto it = classes.find({t.fs_power, key});
        if (it == classes.end()) {
            Term rep = t;
            rep.subset.resize(t.subset.size());
            std::iota(rep.subset.begin(), rep.subset.end(), 1);
            rep.composition = key;
            std::sort(rep.composition.begin(), rep.composition.end(), std::greater<int>());
            classes.insert({{t.fs_power, key}, std::move(rep)});
        } else {
            it->second.multiplicity += t.multiplicity;
        }
    }
    std::vector<Term> out;
    out.reserve(classes.size());
    for (auto& [key, rep] : classes) out.push_back(std::move(rep));
    return out;
}

// ---------------------------------------------------------------------------
// Reduction to integrable terms
// ---------------------------------------------------------------------------

namespace {

// 1-form label: (true, c) = dbar log||Z_c||^2, (false, a) = d log||Z_a||^2.
using FormLabel = std::pair<bool, int>;

// Canonical order: all dbar factors ascending, then all del factors ascending.
bool canonical_less(const FormLabel& x, const FormLabel& y) {
    if (x.first != y.first) return x.first;
    return x.second < y.second;
}

int sign_to_canonical(std::vector<FormLabel> forms) {
    int sign = 1;
    for (size_t i = 0; i + 1 < forms.size(); ++i)
        for (size_t j = 0; j + 1 < forms.size() - i; ++j)
            if (canonical_less(forms[j + 1], forms[j])) {
                std::swap(forms[j], forms[j + 1]);
                sign = -sign;
            }
    return sign;
}

struct Item {
    int n = 0;
    std::map<int, int> logs;
    std::map<int, int> apieces;  // index -> q  (the current dbar d (L^q))
    std::vector<int> dbar, del;  // sorted mark lists
    std::vector<int> restricted;
    int fs_pow = 0;
    Rational coef;
    int pi_pow = 0, i_pow = 0;

    std::vector<FormLabel> canonical_forms() const {
        std::vector<FormLabel> v;
        for (int c : dbar) v.emplace_back(true, c);
        for (int a : del) v.emplace_back(false, a);
        return v;
    }
};

void sorted_insert(std::vector<int>& v, int x) {
    v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

void sorted_erase(std::vector<int>& v, int x) {
    v.erase(std::find(v.begin(), v.end(), x));
}

// Position parity of a 1-form inside the canonical wedge (number of odd
// factors preceding it).
int parity_before(const std::vector<FormLabel>& forms, const FormLabel& f) {
    int cnt = 0;
    for (const auto& g : forms) {
        if (g == f) return (cnt % 2 == 0) ? 1 : -1;
        ++cnt;
    }
    throw std::logic_error("parity_before: form not present");
}

// Eliminate one d-dbar block by a single integration by parts; the moved
// derivative is dbar when dbar_moves, d otherwise.  Every Leibniz target of
// the redistributed derivative spawns one output item.
void transfer_apiece(const Item& it, int b, bool dbar_moves, std::vector<Item>& out) {
    int q = it.apieces.at(b);
    Item base = it;
    base.apieces.erase(b);
    base.logs[b] += q - 1;
    if (base.logs[b] == 0) base.logs.erase(b);
    base.coef *= q;
    if (!dbar_moves) base.coef = -base.coef;  // int dbar d G ^ Phi = -int dbar G ^ d Phi
    auto old_forms = base.canonical_forms();
    FormLabel moved{!dbar_moves, b};  // the 1-form left on b

    // scalar log targets; b's fresh logs belong to the moved block itself
    // (the integrated-by-parts factor), not to Phi, so they are not targets
    for (const auto& [a, p] : base.logs) {
        if (a == b) continue;
        bool a_is_marked_del  = std::binary_search(base.del.begin(), base.del.end(), a);
        bool a_is_marked_dbar = std::binary_search(base.dbar.begin(), base.dbar.end(), a);
        if (dbar_moves && a_is_marked_del)
            throw std::domain_error("reduce_term: transfer collision (dbar onto d-marked logs)");
        if (!dbar_moves && a_is_marked_dbar)
            throw std::domain_error("reduce_term: transfer collision (d onto dbar-marked logs)");
        if (dbar_moves && a_is_marked_dbar) continue;  // dbar of the a-block vanishes
        if (!dbar_moves && a_is_marked_del) continue;  // d of the a-block vanishes
        Item nx = base;
        nx.coef *= p;
        if (--nx.logs[a] == 0) nx.logs.erase(a);
        FormLabel hit{dbar_moves, a};
        std::vector<FormLabel> deriv{moved, hit};
        deriv.insert(deriv.end(), old_forms.begin(), old_forms.end());
        nx.coef *= sign_to_canonical(deriv);
        if (dbar_moves) sorted_insert(nx.dbar, a); else sorted_insert(nx.del, a);
        if (dbar_moves) sorted_insert(nx.del, b); else sorted_insert(nx.dbar, b);
        out.push_back(std::move(nx));
    }

    // bare opposite-mark blocks: the hit becomes a full d-dbar of a single
    // log, i.e. the Poincare-Lelong current 2 pi i [D_a] - 2 i omega_FS
    const auto& opp = dbar_moves ? base.del : base.dbar;
    for (int a : opp) {
        if (base.logs.count(a)) continue;  // collision case, rejected above
        FormLabel block{!dbar_moves, a};
        int sgn = parity_before(old_forms, block);
        Item common = base;
        common.coef *= sgn;
        if (!dbar_moves) common.coef = -common.coef;  // d dbar = -dbar d
        if (dbar_moves) sorted_erase(common.del, a); else sorted_erase(common.dbar, a);
        auto remaining = common.canonical_forms();
        std::vector<FormLabel> deriv{moved};
        deriv.insert(deriv.end(), remaining.begin(), remaining.end());
        int reorder = sign_to_canonical(deriv);
        if (dbar_moves) sorted_insert(common.del, b); else sorted_insert(common.dbar, b);
        common.coef *= reorder;
        common.i_pow = (common.i_pow + 1) % 4;

        Item restr = common;
        restr.coef *= 2;
        restr.pi_pow += 1;
        sorted_insert(restr.restricted, a);
        out.push_back(std::move(restr));

        Item fsbr = common;
        fsbr.coef *= -2;
        fsbr.fs_pow += 1;
        out.push_back(std::move(fsbr));
    }
}

void multinomial_rec(const std::vector<int>& idx, size_t pos, int left, std::map<int, int>& cur,
                     Rational coef, int lp, std::vector<std::pair<std::map<int, int>, Rational>>& out) {
    if (pos + 1 == idx.size()) {
        if (left > 0) cur[idx[pos]] = left;
        Rational c = coef / Rational(factorial(left));
        out.emplace_back(cur, c * Rational(factorial(lp)));
        if (left > 0) cur.erase(idx[pos]);
        return;
    }
    for (int take = 0; take <= left; ++take) {
        if (take > 0) cur[idx[pos]] = take;
        multinomial_rec(idx, pos + 1, left - take, cur, coef / Rational(factorial(take)), lp, out);
        if (take > 0) cur.erase(idx[pos]);
    }
}

}  // namespace

std::vector<ReducedTerm> reduce_term(const Term& t) {
    if (!t.composition_ok()) throw std::invalid_argument("reduce_term: malformed term");

    // multinomial expansion of (sum_{j not in J} log||Z_j||^2)^{l'}
    std::vector<int> complement;
    for (int j = 0; j <= t.n; ++j)
        if (!std::binary_search(t.subset.begin(), t.subset.end(), j)) complement.push_back(j);
    std::vector<std::pair<std::map<int, int>, Rational>> log_splits;
    if (t.log_power == 0) {
        log_splits.emplace_back(std::map<int, int>{}, Rational(1));
    } else {
        std::map<int, int> cur;
        multinomial_rec(complement, 0, t.log_power, cur, Rational(1), t.log_power, log_splits);
    }

    // slot expansion: mu_{-1} restricts, mu_l splits into the d-dbar piece
    // and the log * omega_FS piece
    std::vector<Item> work;
    for (const auto& [logmap, mcoef] : log_splits) {
        Item base;
        base.n      = t.n;
        base.logs   = logmap;
        base.fs_pow = t.fs_power;
        base.coef   = t.multiplicity * mcoef;
        std::vector<Item> cur{base};
        for (size_t s = 0; s < t.subset.size(); ++s) {
            int j = t.subset[s], l = t.composition[s];
            std::vector<Item> next;
            for (const auto& item : cur) {
                if (l == -1) {
                    Item r = item;
                    r.pi_pow += 1;
                    sorted_insert(r.restricted, j);
                    next.push_back(std::move(r));
                    continue;
                }
                Item a = item;  // -(i/2) (1/(l+2)!) dbar d (L_j^{l+2})
                a.coef *= -Rational(1, 2) / Rational(factorial(l + 2));
                a.i_pow = (a.i_pow + 1) % 4;
                a.apieces[j] = l + 2;
                next.push_back(std::move(a));
                Item bb = item;  // (1/(l+1)!) L_j^{l+1} omega_FS
                bb.coef *= Rational(1) / Rational(factorial(l + 1));
                bb.logs[j] += l + 1;
                bb.fs_pow += 1;
                next.push_back(std::move(bb));
            }
            cur = std::move(next);
        }
        for (auto& item : cur) work.push_back(std::move(item));
    }

    // eliminate the d-dbar blocks
    std::vector<ReducedTerm> out;
    while (!work.empty()) {
        Item it = std::move(work.back());
        work.pop_back();
        if (it.coef == 0) continue;
        if (it.apieces.empty()) {
            ReducedTerm rt;
            rt.n          = it.n;
            rt.restricted = it.restricted;
            rt.log_pow    = it.logs;
            rt.dbar_marks = it.dbar;
            rt.del_marks  = it.del;
            rt.fs_power   = it.fs_pow;
            rt.coef       = it.coef;
            rt.pi_pow     = it.pi_pow;
            rt.i_pow      = it.i_pow;
            if (rt.dbar_marks.size() != rt.del_marks.size())
                throw std::logic_error("reduce_term: unbalanced form degrees");
            if (rt.fs_power + static_cast<int>(rt.del_marks.size()) != rt.ambient_dim())
                throw std::logic_error("reduce_term: degree does not match ambient dimension");
            for (int r : rt.restricted)
                if (rt.log_pow.count(r) ||
                    std::binary_search(rt.dbar_marks.begin(), rt.dbar_marks.end(), r) ||
                    std::binary_search(rt.del_marks.begin(), rt.del_marks.end(), r))
                    throw std::logic_error("reduce_term: restricted index still carried");
            out.push_back(std::move(rt));
            continue;
        }

        int b = it.apieces.begin()->first;
        // no scalar and no odd factor to integrate against: exact, vanishes on 1
        bool has_scalar = false;
        for (const auto& [a, p] : it.logs)
            if (a != b) has_scalar = true;
        if (!has_scalar && it.dbar.empty() && it.del.empty()) continue;

        auto dir_ok = [&](bool dbar_moves) {
            const auto& opp = dbar_moves ? it.del : it.dbar;
            for (int a : opp)
                if (it.logs.count(a)) return false;
            return true;
        };
        if (dir_ok(true)) transfer_apiece(it, b, true, work);
        else if (dir_ok(false)) transfer_apiece(it, b, false, work);
        else throw std::domain_error("reduce_term: no transfer direction available");
    }
    return out;
}

ZetaExpr leading_coefficient(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("leading_coefficient: n must be in [1,5]");
    ZetaExpr total;
    for (const auto& J : subsets_of_size(n, n)) {
        (void)J;  // each size-n subset restricts to one reduced point
        total += ZetaExpr::pi_pow(n);
    }
    return total;
}

}  // namespace fp
