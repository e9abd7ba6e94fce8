#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace vvaf {

using Int = boost::multiprecision::cpp_int;
using cplx = std::complex<double>;

double to_double(const Int& x);

// A point of C ∪ {∞}.
class ExtPoint {
public:
    ExtPoint(cplx z) : z_(z) {}
    ExtPoint(double x) : z_(x, 0.0) {}
    static ExtPoint infinity();

    bool is_infinite() const { return inf_; }
    cplx value() const;

    bool operator==(const ExtPoint& o) const;

private:
    ExtPoint() = default;
    cplx z_{};
    bool inf_ = false;
};

enum class ElementClass { Identity, Elliptic, Parabolic, Hyperbolic };
std::string to_string(ElementClass c);

// Element of PSL2(Z), stored with the first nonzero of (c, d) positive.
class SL2Z {
public:
    SL2Z();
    SL2Z(Int a, Int b, Int c, Int d);

    static SL2Z S();
    static SL2Z T(const Int& k = 1);

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& d() const { return d_; }

    SL2Z operator*(const SL2Z& o) const;
    SL2Z inverse() const;
    bool operator==(const SL2Z& o) const = default;

    bool is_identity() const;
    Int trace() const { return a_ + d_; }
    double frobenius_norm() const;
    Int max_abs_entry() const;
    std::string to_string() const;

private:
    void normalize();
    Int a_, b_, c_, d_;
};

// Real-entry element of PSL2(R); used for cusp scaling matrices.
class RealElement {
public:
    RealElement();
    RealElement(double a, double b, double c, double d);
    explicit RealElement(const SL2Z& g);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

    RealElement operator*(const RealElement& o) const;
    RealElement inverse() const;
    bool approx_equal(const RealElement& o, double tol = 1e-12) const;

private:
    void normalize();
    double a_, b_, c_, d_;
};

ExtPoint apply(const SL2Z& g, const ExtPoint& tau);
ExtPoint apply(const RealElement& g, const ExtPoint& tau);
cplx apply(const SL2Z& g, cplx tau);

ElementClass classify(const SL2Z& g);

cplx j_factor(const SL2Z& g, cplx tau);
cplx j_factor(const RealElement& g, cplx tau);

struct Letter {
    char gen;  // 's' or 't'
    Int exp;
    bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

Word word_decompose(const SL2Z& g);
SL2Z evaluate_word(const Word& w);
std::string to_string(const Word& w);

// Subgroup of PSL2(Z) given by a membership predicate and its index.
class Subgroup {
public:
    enum class Kind { Full, Gamma, Gamma0, Custom };

    static Subgroup full();
    static Subgroup gamma(long n);
    static Subgroup gamma0(long n);
    static Subgroup custom(std::string name, std::function<bool(const SL2Z&)> pred, long index);

    bool contains(const SL2Z& g) const { return pred_(g); }
    long index() const { return index_; }
    Kind kind() const { return kind_; }
    long level() const { return level_; }
    const std::string& name() const { return name_; }
    bool is_full() const { return kind_ == Kind::Full; }

private:
    Subgroup(Kind k, long level, long index, std::string name, std::function<bool(const SL2Z&)> pred);
    Kind kind_;
    long level_;
    long index_;
    std::string name_;
    std::function<bool(const SL2Z&)> pred_;
};

// Element of Q ∪ {∞}, kept in lowest terms with positive denominator.
class Cusp {
public:
    Cusp(Int num, Int den = 1);
    static Cusp infinity();

    bool is_infinite() const { return inf_; }
    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    double to_double() const;
    std::string to_string() const;
    bool operator==(const Cusp&) const = default;

private:
    Cusp() = default;
    Int num_ = 1, den_ = 0;
    bool inf_ = true;
};

// A_c = (c, -1; 1, 0); identity for ∞.
RealElement scaling_matrix(double c);
RealElement scaling_matrix(const Cusp& c);
// Integral g with g·∞ = c.
SL2Z integral_scaling_matrix(const Cusp& c);

long cusp_width(const Subgroup& h, const Cusp& c);

struct EichlerShift {
    Int n;
    SL2Z reduced;
};
EichlerShift eichler_shift(const SL2Z& g, const Int& h);

// γ_1 = I, ..., γ_d with PSL2(Z) = ⊔ γ_i H.
std::vector<SL2Z> left_transversal(const Subgroup& h);

struct CuspClass {
    Cusp cusp;
    SL2Z scaling;       // integral, scaling·∞ = cusp
    long width;
    SL2Z parabolic;     // scaling · t^width · scaling⁻¹ ∈ H
};
std::vector<CuspClass> cusp_classes(const Subgroup& h);

// Uniform sampler over elements with bounded entries (coprime bottom row).
SL2Z random_element(std::mt19937_64& rng, std::int64_t max_entry);
// Product of up to max_len random letters s, t^e with 1 ≤ |e| ≤ 5.
SL2Z random_word_element(std::mt19937_64& rng, int max_len);

}  // namespace vvaf
