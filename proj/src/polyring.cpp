#include "foam/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace foam {

bool GrevlexGreater::operator()(const Exponents& a, const Exponents& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    for (std::size_t k = a.size(); k-- > 0;) {
        if (a[k] != b[k]) return a[k] < b[k];
    }
    return false;
}

namespace {

void check_arity(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars() != b.nvars())
        throw ArityMismatch(std::to_string(a.nvars()) + " vs " + std::to_string(b.nvars()));
}

}  // namespace

MultiPoly MultiPoly::constant(int nvars, const Int& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
    Exponents e(nvars, 0);
    e.at(i) = 1;
    return monomial(e, 1);
}

MultiPoly MultiPoly::monomial(const Exponents& e, const Int& c) {
    MultiPoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::linear(int nvars, int i, int j) {
    MultiPoly p = variable(nvars, i);
    p -= variable(nvars, j);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Int MultiPoly::constant_term() const { return coeff(Exponents(nvars_, 0)); }

Int MultiPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Int& c) {
    if (static_cast<int>(e.size()) != nvars_) throw ArityMismatch("exponent vector length");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_arity(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_arity(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_arity(a, b);
    MultiPoly r(a.nvars_);
    Exponents e(a.nvars_);
    Int c;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int k = 0; k < a.nvars_; ++k) e[k] = ea[k] + eb[k];
            c = ca * cb;
            r.add_term(e, c);
        }
    }
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Int& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, x] : terms_) x *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(*this);
    for (auto& [e, x] : r.terms_) x = -x;
    return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly result = constant(nvars_, 1);
    MultiPoly base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.begin()->first;  // grevlex is degree-compatible
    return std::accumulate(e.begin(), e.end(), 0);
}

bool MultiPoly::is_homogeneous(int* exp_sum) const {
    if (terms_.empty()) return true;
    int d = total_degree();
    for (const auto& [e, c] : terms_) {
        if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
    }
    if (exp_sum) *exp_sum = d;
    return true;
}

MultiPoly MultiPoly::rename(const std::vector<int>& perm, int new_nvars) const {
    if (static_cast<int>(perm.size()) != nvars_) throw ArityMismatch("rename map length");
    MultiPoly r(new_nvars);
    Exponents f(new_nvars);
    for (const auto& [e, c] : terms_) {
        std::fill(f.begin(), f.end(), 0);
        for (int k = 0; k < nvars_; ++k) {
            if (e[k] == 0) continue;
            f.at(perm[k]) += e[k];
        }
        r.add_term(f, c);
    }
    return r;
}

MultiPoly MultiPoly::swap_vars(int i, int j) const {
    std::vector<int> perm(nvars_);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm.at(i), perm.at(j));
    return rename(perm, nvars_);
}

std::string MultiPoly::to_canonical() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << ' ';
        first = false;
        out << (c > 0 ? "+" : "") << c.get_str();
        if (std::any_of(e.begin(), e.end(), [](int x) { return x != 0; })) {
            out << " *";
            for (int k = 0; k < nvars_; ++k) out << " X" << (k + 1) << '^' << e[k];
        }
    }
    return out.str();
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool unit = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        Int a = abs(c);
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (unit || a != 1) {
            out << a.get_str();
            wrote = true;
        }
        for (int k = 0; k < nvars_; ++k) {
            if (e[k] == 0) continue;
            if (wrote) out << '*';
            out << 'X' << (k + 1);
            if (e[k] > 1) out << '^' << e[k];
            wrote = true;
        }
    }
    return out.str();
}

MultiPoly MultiPoly::parse_canonical(const std::string& text, int nvars) {
    MultiPoly p(nvars);
    std::istringstream in(text);
    std::string tok;
    if (text.find_first_not_of(" \t\n") == std::string::npos) throw ParseError("empty polynomial");
    if (text == "0") return p;
    Int coeff;
    Exponents e(nvars, 0);
    bool have = false;
    auto flush = [&] {
        if (have) p.add_term(e, coeff);
        std::fill(e.begin(), e.end(), 0);
        have = false;
    };
    while (in >> tok) {
        if (tok == "*") continue;
        if (tok[0] == '+' || tok[0] == '-' || std::isdigit(static_cast<unsigned char>(tok[0]))) {
            flush();
            std::string digits = tok[0] == '+' ? tok.substr(1) : tok;
            if (coeff.set_str(digits, 10) != 0) throw ParseError("bad coefficient '" + tok + "'");
            have = true;
        } else if (tok[0] == 'X') {
            auto caret = tok.find('^');
            if (!have || caret == std::string::npos) throw ParseError("bad monomial '" + tok + "'");
            int var = std::stoi(tok.substr(1, caret - 1)) - 1;
            int ex = std::stoi(tok.substr(caret + 1));
            if (var < 0 || var >= nvars || ex < 0) throw ParseError("bad variable '" + tok + "'");
            e[var] += ex;
        } else {
            throw ParseError("unexpected token '" + tok + "'");
        }
    }
    flush();
    return p;
}

MultiPoly poly_mul(const MultiPoly& p, const MultiPoly& q) { return p * q; }

MultiPoly exact_div_linear(const MultiPoly& p, int i, int j) {
    const int n = p.nvars();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw BadParameters("exact_div_linear index");
    if (p.is_zero()) return p;
    // p = sum_k c_k X_i^k; q_{k-1} = c_k + X_j q_k from the top down.
    std::map<int, MultiPoly> slices;
    int top = 0;
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        int k = f[i];
        f[i] = 0;
        auto it = slices.try_emplace(k, n).first;
        it->second.add_term(f, c);
        top = std::max(top, k);
    }
    MultiPoly xj = MultiPoly::variable(n, j);
    MultiPoly q(n);
    MultiPoly carry(n);  // q_k
    for (int k = top; k >= 1; --k) {
        MultiPoly ck = slices.count(k) ? slices.at(k) : MultiPoly(n);
        carry = ck + xj * carry;  // q_{k-1}
        Exponents shift(n, 0);
        shift[i] = k - 1;
        q += carry * MultiPoly::monomial(shift, 1);
    }
    MultiPoly rem = (slices.count(0) ? slices.at(0) : MultiPoly(n)) + xj * carry;
    if (!rem.is_zero())
        throw NotDivisible("(X" + std::to_string(i + 1) + "-X" + std::to_string(j + 1) + ") does not divide");
    return q;
}

Rat specialize(const MultiPoly& p, const std::vector<Rat>& point) {
    if (static_cast<int>(point.size()) != p.nvars()) throw ArityMismatch("specialization point length");
    Rat total = 0;
    Rat term;
    for (const auto& [e, c] : p.terms()) {
        term = c;
        for (int k = 0; k < p.nvars(); ++k) {
            for (int r = 0; r < e[k]; ++r) term *= point[k];
        }
        total += term;
    }
    return total;
}

Rat specialize(const MultiPoly& p, const std::vector<long>& point) {
    std::vector<Rat> q(point.begin(), point.end());
    return specialize(p, q);
}

bool is_symmetric(const MultiPoly& p) {
    for (int k = 0; k + 1 < p.nvars(); ++k) {
        for (const auto& [e, c] : p.terms()) {
            Exponents f = e;
            std::swap(f[k], f[k + 1]);
            if (p.coeff(f) != c) return false;
        }
    }
    return true;
}

RationalFn::RationalFn(MultiPoly num, const std::map<std::pair<int, int>, int>& den)
    : num_(std::move(num)) {
    const int n = num_.nvars();
    for (auto [ij, e] : den) {
        auto [i, j] = ij;
        if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw BadParameters("denominator pair");
        if (i > j) {
            std::swap(i, j);
            if (e % 2 != 0) num_ = -num_;
        }
        if (e < 0) {
            num_ *= MultiPoly::linear(n, i, j).pow(static_cast<unsigned>(-e));
        } else if (e > 0) {
            den_[{i, j}] += e;
        }
    }
}

int RationalFn::den_degree() const {
    int d = 0;
    for (const auto& [ij, e] : den_) d += e;
    return d;
}

RationalFn rf_lift(const RationalFn& a, const RationalFn::DenMap& den) {
    MultiPoly num = a.num();
    for (const auto& [ij, e] : den) {
        auto it = a.den().find(ij);
        int have = it == a.den().end() ? 0 : it->second;
        if (have > e) throw BadParameters("rf_lift target does not dominate");
        if (e > have && !num.is_zero())
            num *= MultiPoly::linear(a.nvars(), ij.first, ij.second).pow(static_cast<unsigned>(e - have));
    }
    for (const auto& [ij, e] : a.den()) {
        if (!den.count(ij)) throw BadParameters("rf_lift target misses a factor");
    }
    return RationalFn(std::move(num), den);
}

RationalFn rf_add(const RationalFn& a, const RationalFn& b) {
    if (a.nvars() != b.nvars()) throw ArityMismatch("rf_add");
    RationalFn::DenMap lcd = a.den();
    for (const auto& [ij, e] : b.den()) lcd[ij] = std::max(lcd[ij], e);
    RationalFn la = rf_lift(a, lcd);
    RationalFn lb = rf_lift(b, lcd);
    return RationalFn(la.num() + lb.num(), lcd);
}

MultiPoly rf_normalize(const RationalFn& a) {
    MultiPoly num = a.num();
    for (const auto& [ij, e] : a.den()) {
        for (int r = 0; r < e; ++r) {
            try {
                num = exact_div_linear(num, ij.first, ij.second);
            } catch (const NotDivisible& err) {
                throw NotPolynomial(err.what());
            }
        }
    }
    return num;
}

}  // namespace foam
