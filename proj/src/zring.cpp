#include <fp/zring.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <mutex>
#include <sstream>

namespace fp {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Bernoulli numbers and even-zeta ratios
// ---------------------------------------------------------------------------

Rational bernoulli(int n) {
    static std::vector<Rational> table = {Rational(1), Rational(-1, 2)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    // sum_{j=0}^{m-1} C(m+1,j) B_j = 0 for m >= 1
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        Rational acc = 0;
        for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * table[j];
        table.push_back(-acc / Rational(m + 1));
    }
    return table[n];
}

Rational even_zeta_over_pi_power(int two_k) {
    if (two_k < 2 || two_k % 2 != 0)
        throw std::invalid_argument("even_zeta_over_pi_power: argument must be even and >= 2");
    // zeta(2k) = (-1)^(k+1) B_{2k} (2 pi)^{2k} / (2 (2k)!); table built once,
    // read lock-free afterwards
    static const std::vector<Rational> table = [] {
        std::vector<Rational> t(129);
        for (int m = 2; m <= 128; m += 2) {
            Rational r = bernoulli(m) * Rational(BigInt(1) << m) / Rational(2 * factorial(m));
            t[static_cast<size_t>(m)] = ((m / 2) % 2 == 0) ? Rational(-r) : r;
        }
        return t;
    }();
    if (two_k > 128) throw std::invalid_argument("even_zeta_over_pi_power: weight above 128");
    return table[static_cast<size_t>(two_k)];
}

Rational rational_from_str(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

// ---------------------------------------------------------------------------
// Float constants
// ---------------------------------------------------------------------------

const double kEulerGamma = 0.577215664901532860606512090082402;

double zeta_value(int k) {
    static const double table[] = {
        // zeta(2) .. zeta(35), 33 significant digits
        1.64493406684822643647241516664603, 1.20205690315959428539973816151145,
        1.08232323371113819151600369654117, 1.03692775514336992633136548645703,
        1.01734306198444913971451792979092, 1.00834927738192282683979754984980,
        1.00407735619794433937868523850865, 1.00200839282608221441785276923241,
        1.00099457512781808533714595890032, 1.00049418860411946455870228252647,
        1.00024608655330804829863799804774, 1.00012271334757848914675183652636,
        1.00006124813505870482925854510514, 1.00003058823630702049355172851065,
        1.00001528225940865187173257148764, 1.00000763719763789976227360029356,
        1.00000381729326499983985646164462, 1.00000190821271655393892565695780,
        1.00000095396203387279611315203868, 1.00000047693298678780646311671960,
        1.00000023845050272773299000364819, 1.00000011921992596531107306778872,
        1.00000005960818905125947961244021, 1.00000002980350351465228018606371,
        1.00000001490155482836504123465851, 1.00000000745071178983542949198100,
        1.00000000372533402478845705481920, 1.00000000186265972351304900640391,
        1.00000000093132743241966818287176, 1.00000000046566290650337840729892,
        1.00000000023283118336765054920015, 1.00000000011641550172700519775930,
        1.00000000005820772087902700889244, 1.00000000002910385044497099686929,
    };
    if (k < 2) throw std::invalid_argument("zeta_value: argument must be >= 2");
    if (k <= 35) return table[k - 2];
    // tail: converges like 2^-k, a handful of terms suffice for k > 35
    double s = 1.0;
    for (int n = 2; n <= 8; ++n) s += std::pow(static_cast<double>(n), -k);
    return s;
}

// ---------------------------------------------------------------------------
// ZetaMonomial
// ---------------------------------------------------------------------------

ZetaMonomial ZetaMonomial::operator*(const ZetaMonomial& o) const {
    ZetaMonomial r;
    r.gamma_pow = gamma_pow + o.gamma_pow;
    r.pi_pow    = pi_pow + o.pi_pow;
    r.zeta_args = zeta_args;
    r.zeta_args.insert(r.zeta_args.end(), o.zeta_args.begin(), o.zeta_args.end());
    std::sort(r.zeta_args.begin(), r.zeta_args.end());
    return r;
}

std::string ZetaMonomial::str() const {
    std::string s;
    auto piece = [&s](const std::string& p) {
        if (!s.empty()) s += "*";
        s += p;
    };
    if (gamma_pow == 1) piece("gamma");
    else if (gamma_pow > 1) piece("gamma^" + std::to_string(gamma_pow));
    if (pi_pow == 1) piece("pi");
    else if (pi_pow > 1) piece("pi^" + std::to_string(pi_pow));
    for (size_t i = 0; i < zeta_args.size();) {
        size_t j = i;
        while (j < zeta_args.size() && zeta_args[j] == zeta_args[i]) ++j;
        std::string z = "zeta(" + std::to_string(zeta_args[i]) + ")";
        if (j - i > 1) z += "^" + std::to_string(j - i);
        piece(z);
        i = j;
    }
    return s;
}

// ---------------------------------------------------------------------------
// ZetaExpr
// ---------------------------------------------------------------------------

ZetaExpr::ZetaExpr(const Rational& v) {
    if (v != 0) terms_[ZetaMonomial{}] = v;
}

ZetaExpr ZetaExpr::zeta(int k, long long pow) {
    if (k < 2) throw std::invalid_argument("ZetaExpr::zeta: argument must be >= 2");
    ZetaMonomial m;
    m.zeta_args.assign(static_cast<size_t>(pow), k);
    return monomial(m, 1);
}

ZetaExpr ZetaExpr::pi_pow(int k) {
    ZetaMonomial m;
    m.pi_pow = k;
    return monomial(m, 1);
}

ZetaExpr ZetaExpr::euler_gamma_pow(int k) {
    ZetaMonomial m;
    m.gamma_pow = k;
    return monomial(m, 1);
}

ZetaExpr ZetaExpr::monomial(const ZetaMonomial& m, const Rational& c) {
    ZetaExpr e;
    e.add_term(m, c);
    return e;
}

// Insert c * m after collapsing any multiple even zeta arguments of m into a
// single even zeta of the total weight (exact via Bernoulli ratios).
void ZetaExpr::add_term(const ZetaMonomial& m, const Rational& c) {
    if (c == 0) return;
    int even_count = 0;
    bool sorted = true;
    for (size_t i = 0; i < m.zeta_args.size(); ++i) {
        if (m.zeta_args[i] % 2 == 0) ++even_count;
        if (i > 0 && m.zeta_args[i] < m.zeta_args[i - 1]) sorted = false;
    }
    if (even_count <= 1 && sorted) {
        // already canonical: in particular every product of two canonical
        // monomials with at most one even argument between them lands here
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
        return;
    }
    ZetaMonomial canon;
    canon.gamma_pow = m.gamma_pow;
    canon.pi_pow    = m.pi_pow;
    Rational coef   = c;
    int even_weight = 0;
    Rational even_ratio = 1;
    for (int k : m.zeta_args) {
        if (k % 2 == 0) {
            even_weight += k;
            even_ratio *= even_zeta_over_pi_power(k);
        } else {
            canon.zeta_args.push_back(k);
        }
    }
    if (even_count == 1) {
        canon.zeta_args.push_back(even_weight);
    } else if (even_count > 1) {
        canon.zeta_args.push_back(even_weight);
        coef *= even_ratio / even_zeta_over_pi_power(even_weight);
    }
    std::sort(canon.zeta_args.begin(), canon.zeta_args.end());
    auto it = terms_.find(canon);
    if (it == terms_.end()) {
        terms_[canon] = coef;
    } else {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

bool ZetaExpr::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int ZetaExpr::gamma_degree() const {
    if (is_zero()) throw std::domain_error("gamma_degree: zero element has no degree");
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.gamma_pow);
    return d;
}

double ZetaExpr::eval(int digits) const {
    if (digits > 17)
        throw std::invalid_argument("ZetaExpr::eval: precision beyond double not supported");
    long double total = 0.0L;
    for (const auto& [m, c] : terms_) {
        long double v = static_cast<long double>(rational_to_double(c));
        for (int i = 0; i < m.gamma_pow; ++i) v *= static_cast<long double>(kEulerGamma);
        if (m.pi_pow != 0) v *= powl(static_cast<long double>(M_PI), m.pi_pow);
        for (int k : m.zeta_args) v *= static_cast<long double>(zeta_value(k));
        total += v;
    }
    return static_cast<double>(total);
}

ZetaExpr ZetaExpr::operator-() const {
    ZetaExpr r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

ZetaExpr& ZetaExpr::operator+=(const ZetaExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ZetaExpr& ZetaExpr::operator-=(const ZetaExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

ZetaExpr operator*(const ZetaExpr& a, const ZetaExpr& b) {
    ZetaExpr r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, Rational(ca * cb));
    return r;
}

std::string ZetaExpr::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (s.empty()) {
            if (a < 0) {
                s += "-";
                a = -a;
            }
        } else {
            s += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        std::string mono = m.str();
        if (mono.empty()) {
            s += rational_str(a);
        } else {
            if (a != 1) s += rational_str(a) + "*";
            s += mono;
        }
    }
    return s;
}

std::string ZetaExpr::to_json_string() const {
    json arr = json::array();
    for (const auto& [m, c] : terms_) {
        json t;
        t["coef"]  = rational_str(c);
        t["gamma"] = m.gamma_pow;
        t["pi"]    = m.pi_pow;
        t["zeta"]  = m.zeta_args;
        arr.push_back(t);
    }
    json out;
    out["terms"] = arr;
    return out.dump();
}

ZetaExpr ZetaExpr::from_json_string(const std::string& s) {
    json in = json::parse(s);
    ZetaExpr e;
    for (const auto& t : in.at("terms")) {
        ZetaMonomial m;
        m.gamma_pow = t.at("gamma").get<int>();
        m.pi_pow    = t.at("pi").get<int>();
        m.zeta_args = t.at("zeta").get<std::vector<int>>();
        e.add_term(m, rational_from_str(t.at("coef").get<std::string>()));
    }
    return e;
}

}  // namespace fp
