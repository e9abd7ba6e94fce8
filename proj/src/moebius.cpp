#include "vvaf/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vvaf {

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Int mod_pos(const Int& a, long n) {
    Int r = a % n;
    if (r < 0) r += n;
    return r;
}

// Returns (g, u, v) with a·u + b·v = g = gcd(a, b) ≥ 0.
void ext_gcd(const Int& a, const Int& b, Int& g, Int& u, Int& v) {
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    g = r0; u = s0; v = t0;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

double to_double(const Int& x) { return x.convert_to<double>(); }

ExtPoint ExtPoint::infinity() {
    ExtPoint p;
    p.inf_ = true;
    return p;
}

cplx ExtPoint::value() const {
    if (inf_) throw std::logic_error("ExtPoint: value of infinity");
    return z_;
}

bool ExtPoint::operator==(const ExtPoint& o) const {
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return z_ == o.z_;
}

std::string to_string(ElementClass c) {
    switch (c) {
        case ElementClass::Identity: return "identity";
        case ElementClass::Elliptic: return "elliptic";
        case ElementClass::Parabolic: return "parabolic";
        case ElementClass::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

// ---- SL2Z ----

SL2Z::SL2Z() : a_(1), b_(0), c_(0), d_(1) {}

SL2Z::SL2Z(Int a, Int b, Int c, Int d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != 1) throw std::invalid_argument("SL2Z: determinant is not 1");
    normalize();
}

void SL2Z::normalize() {
    if (c_ < 0 || (c_ == 0 && d_ < 0)) {
        a_ = -a_; b_ = -b_; c_ = -c_; d_ = -d_;
    }
}

SL2Z SL2Z::S() { return SL2Z(0, -1, 1, 0); }
SL2Z SL2Z::T(const Int& k) { return SL2Z(1, k, 0, 1); }

SL2Z SL2Z::operator*(const SL2Z& o) const {
    return SL2Z(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

SL2Z SL2Z::inverse() const { return SL2Z(d_, -b_, -c_, a_); }

bool SL2Z::is_identity() const { return b_ == 0 && c_ == 0 && a_ == 1; }

double SL2Z::frobenius_norm() const {
    double a = to_double(a_), b = to_double(b_), c = to_double(c_), d = to_double(d_);
    return std::sqrt(a * a + b * b + c * c + d * d);
}

Int SL2Z::max_abs_entry() const {
    return std::max({abs(a_), abs(b_), abs(c_), abs(d_)});
}

std::string SL2Z::to_string() const {
    std::ostringstream os;
    os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << d_ << "]]";
    return os.str();
}

// ---- RealElement ----

RealElement::RealElement() : a_(1), b_(0), c_(0), d_(1) {}

RealElement::RealElement(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    double det = a * d - b * c;
    double scale = std::max({1.0, std::abs(a * d), std::abs(b * c)});
    if (std::abs(det - 1.0) > 1e-12 * scale) throw std::invalid_argument("RealElement: determinant is not 1");
    normalize();
}

RealElement::RealElement(const SL2Z& g)
    : RealElement(to_double(g.a()), to_double(g.b()), to_double(g.c()), to_double(g.d())) {}

void RealElement::normalize() {
    if (c_ < 0 || (c_ == 0 && d_ < 0)) {
        a_ = -a_; b_ = -b_; c_ = -c_; d_ = -d_;
    }
}

RealElement RealElement::operator*(const RealElement& o) const {
    return RealElement(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                       c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

RealElement RealElement::inverse() const { return RealElement(d_, -b_, -c_, a_); }

bool RealElement::approx_equal(const RealElement& o, double tol) const {
    return std::abs(a_ - o.a_) <= tol && std::abs(b_ - o.b_) <= tol &&
           std::abs(c_ - o.c_) <= tol && std::abs(d_ - o.d_) <= tol;
}

// ---- action ----

namespace {

ExtPoint moebius(double a, double b, double c, double d, const ExtPoint& tau) {
    if (tau.is_infinite()) {
        if (c == 0.0) return ExtPoint::infinity();
        return ExtPoint(a / c);
    }
    cplx z = tau.value();
    cplx den = c * z + d;
    if (den == cplx(0.0, 0.0)) return ExtPoint::infinity();
    return ExtPoint((a * z + b) / den);
}

}  // namespace

ExtPoint apply(const SL2Z& g, const ExtPoint& tau) {
    return moebius(to_double(g.a()), to_double(g.b()), to_double(g.c()), to_double(g.d()), tau);
}

ExtPoint apply(const RealElement& g, const ExtPoint& tau) {
    return moebius(g.a(), g.b(), g.c(), g.d(), tau);
}

cplx apply(const SL2Z& g, cplx tau) {
    if (!(tau.imag() > 0.0)) return apply(g, ExtPoint(tau)).value();
    // Im(γτ) = Im τ/|cτ+d|² avoids cancellation in the quotient.
    const double a = to_double(g.a()), b = to_double(g.b()), c = to_double(g.c()), d = to_double(g.d());
    const double x = tau.real(), y = tau.imag();
    const double n = std::norm(cplx(c * x + d, c * y));
    return {((a * x + b) * (c * x + d) + a * c * y * y) / n, y / n};
}

ElementClass classify(const SL2Z& g) {
    if (g.is_identity()) return ElementClass::Identity;
    Int tr = abs(g.trace());
    if (tr < 2) return ElementClass::Elliptic;
    if (tr == 2) return ElementClass::Parabolic;
    return ElementClass::Hyperbolic;
}

cplx j_factor(const SL2Z& g, cplx tau) { return to_double(g.c()) * tau + to_double(g.d()); }
cplx j_factor(const RealElement& g, cplx tau) { return g.c() * tau + g.d(); }

// ---- words ----

Word word_decompose(const SL2Z& g) {
    Int a = g.a(), b = g.b(), c = g.c(), d = g.d();
    std::vector<Int> qs;
    // Right-multiply by t^{-q} s until the bottom-left entry vanishes.
    while (c != 0) {
        Int q = floor_div(2 * d + c, 2 * c);
        b -= q * a;
        d -= q * c;
        qs.push_back(q);
        Int na = b, nb = -a, nc = d, nd = -c;
        a = na; b = nb; c = nc; d = nd;
    }
    Int n = b * d;  // a = d = ±1
    Word w;
    if (n != 0) w.push_back({'t', n});
    for (auto it = qs.rbegin(); it != qs.rend(); ++it) {
        w.push_back({'s', 1});
        if (*it != 0) w.push_back({'t', *it});
    }
    return w;
}

SL2Z evaluate_word(const Word& w) {
    SL2Z g;
    for (const auto& l : w) {
        if (l.gen == 's') {
            if (abs(l.exp) % 2 == 1) g = g * SL2Z::S();
        } else if (l.gen == 't') {
            g = g * SL2Z::T(l.exp);
        } else {
            throw std::invalid_argument("word: unknown generator");
        }
    }
    return g;
}

std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << '.';
        os << w[i].gen;
        if (w[i].exp != 1) os << '^' << w[i].exp;
    }
    return os.str();
}

// ---- subgroups ----

Subgroup::Subgroup(Kind k, long level, long index, std::string name, std::function<bool(const SL2Z&)> pred)
    : kind_(k), level_(level), index_(index), name_(std::move(name)), pred_(std::move(pred)) {}

Subgroup Subgroup::full() {
    return Subgroup(Kind::Full, 1, 1, "PSL2Z", [](const SL2Z&) { return true; });
}

Subgroup Subgroup::gamma(long n) {
    if (n < 1) throw std::invalid_argument("Gamma(N): N must be positive");
    if (n == 1) return full();
    long index = n * n * n;
    long num = 1, den = 1;
    for (long p : prime_factors(n)) { num *= (p * p - 1); den *= p * p; }
    index = index / den * num;
    if (n > 2) index /= 2;
    auto pred = [n](const SL2Z& g) {
        Int a = mod_pos(g.a(), n), b = mod_pos(g.b(), n), c = mod_pos(g.c(), n), d = mod_pos(g.d(), n);
        if (b != 0 || c != 0) return false;
        return (a == 1 && d == 1) || (a == n - 1 && d == n - 1);
    };
    return Subgroup(Kind::Gamma, n, index, "Gamma(" + std::to_string(n) + ")", pred);
}

Subgroup Subgroup::gamma0(long n) {
    if (n < 1) throw std::invalid_argument("Gamma0(N): N must be positive");
    if (n == 1) return full();
    long index = n;
    for (long p : prime_factors(n)) index = index / p * (p + 1);
    auto pred = [n](const SL2Z& g) { return mod_pos(g.c(), n) == 0; };
    return Subgroup(Kind::Gamma0, n, index, "Gamma0(" + std::to_string(n) + ")", pred);
}

Subgroup Subgroup::custom(std::string name, std::function<bool(const SL2Z&)> pred, long index) {
    if (index < 1) throw std::invalid_argument("subgroup index must be positive");
    return Subgroup(Kind::Custom, 0, index, std::move(name), std::move(pred));
}

// ---- cusps ----

Cusp::Cusp(Int num, Int den) : inf_(false) {
    if (den == 0) {
        if (num == 0) throw std::invalid_argument("Cusp: 0/0");
        inf_ = true;
        num_ = 1;
        den_ = 0;
        return;
    }
    Int g = boost::multiprecision::gcd(num, den);
    num /= g;
    den /= g;
    if (den < 0) { num = -num; den = -den; }
    num_ = std::move(num);
    den_ = std::move(den);
}

Cusp Cusp::infinity() { return Cusp(); }

double Cusp::to_double() const {
    if (inf_) return std::numeric_limits<double>::infinity();
    return vvaf::to_double(num_) / vvaf::to_double(den_);
}

std::string Cusp::to_string() const {
    if (inf_) return "oo";
    std::ostringstream os;
    os << num_;
    if (den_ != 1) os << '/' << den_;
    return os.str();
}

RealElement scaling_matrix(double c) { return RealElement(c, -1.0, 1.0, 0.0); }

RealElement scaling_matrix(const Cusp& c) {
    if (c.is_infinite()) return RealElement();
    return scaling_matrix(c.to_double());
}

SL2Z integral_scaling_matrix(const Cusp& c) {
    if (c.is_infinite()) return SL2Z();
    Int g, u, v;
    ext_gcd(c.num(), c.den(), g, u, v);  // num·u + den·v = 1
    return SL2Z(c.num(), -v, c.den(), u);
}

long cusp_width(const Subgroup& h, const Cusp& c) {
    SL2Z g = integral_scaling_matrix(c);
    SL2Z gi = g.inverse();
    for (long w = 1; w <= h.index(); ++w) {
        if (h.contains(g * SL2Z::T(w) * gi)) return w;
    }
    throw std::runtime_error("cusp_width: no width within the index bound for " + h.name());
}

EichlerShift eichler_shift(const SL2Z& g, const Int& h) {
    if (h <= 0) throw std::invalid_argument("eichler_shift: width must be positive");
    const Int &a = g.a(), &b = g.b(), &c = g.c(), &d = g.d();
    Int num = a * c + b * d;
    Int den = h * (c * c + d * d);
    Int n0 = floor_div(num, den);
    auto cost = [&](const Int& n) -> Int {
        Int x = a - n * h * c, y = b - n * h * d;
        return x * x + y * y;
    };
    Int best = n0;
    if (cost(n0 + 1) < cost(n0)) best = n0 + 1;
    return {best, SL2Z(a - best * h * c, b - best * h * d, c, d)};
}

std::vector<SL2Z> left_transversal(const Subgroup& h) {
    std::vector<SL2Z> reps{SL2Z()};
    std::deque<SL2Z> queue{SL2Z()};
    const SL2Z gens[3] = {SL2Z::S(), SL2Z::T(1), SL2Z::T(-1)};
    while (!queue.empty() && static_cast<long>(reps.size()) < h.index()) {
        SL2Z r = queue.front();
        queue.pop_front();
        for (const auto& gen : gens) {
            SL2Z x = gen * r;
            bool known = std::any_of(reps.begin(), reps.end(),
                                     [&](const SL2Z& y) { return h.contains(y.inverse() * x); });
            if (!known) {
                reps.push_back(x);
                queue.push_back(x);
            }
        }
    }
    if (static_cast<long>(reps.size()) != h.index())
        throw std::runtime_error("left_transversal: coset count disagrees with index of " + h.name());
    return reps;
}

std::vector<CuspClass> cusp_classes(const Subgroup& h) {
    std::vector<SL2Z> right;
    for (const auto& r : left_transversal(h)) right.push_back(r.inverse());
    const std::size_t n = right.size();
    auto coset_of = [&](const SL2Z& x) -> std::size_t {
        for (std::size_t j = 0; j < n; ++j)
            if (h.contains(x * right[j].inverse())) return j;
        throw std::runtime_error("cusp_classes: element outside every coset");
    };
    std::vector<bool> seen(n, false);
    std::vector<CuspClass> out;
    const SL2Z t = SL2Z::T(1);
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        long w = 0;
        std::size_t j = i;
        do {
            seen[j] = true;
            ++w;
            j = coset_of(right[j] * t);
        } while (j != i);
        const SL2Z& g = right[i];
        Cusp cusp = g.c() == 0 ? Cusp::infinity() : Cusp(g.a(), g.c());
        out.push_back({cusp, g, w, g * SL2Z::T(w) * g.inverse()});
    }
    return out;
}

// ---- sampling ----

SL2Z random_element(std::mt19937_64& rng, std::int64_t max_entry) {
    std::uniform_int_distribution<std::int64_t> dist(-max_entry, max_entry);
    for (;;) {
        std::int64_t c = dist(rng), d = dist(rng);
        if (std::gcd(c, d) != 1) continue;
        if (c == 0) return SL2Z(d, dist(rng), 0, d);
        Int g, u, v;
        ext_gcd(d, c, g, u, v);  // d·u + c·v = 1
        Int a = u, b = -v;
        Int k = -floor_div(2 * a + c, 2 * Int(c));
        a += k * c;
        b += k * d;
        if (abs(a) > max_entry || abs(b) > max_entry) continue;
        return SL2Z(a, b, c, d);
    }
}

SL2Z random_word_element(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len_dist(1, max_len);
    std::uniform_int_distribution<int> exp_dist(1, 5);
    std::bernoulli_distribution coin(0.5);
    int len = len_dist(rng);
    SL2Z g;
    for (int i = 0; i < len; ++i) {
        if (coin(rng)) {
            g = g * SL2Z::S();
        } else {
            int e = exp_dist(rng);
            g = g * SL2Z::T(coin(rng) ? e : -e);
        }
    }
    return g;
}

}  // namespace vvaf
