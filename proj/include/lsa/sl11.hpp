#pragma once

#include "lsa/loop_engine.hpp"
#include "lsa/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lsa::sl11 {

// Values of zeta on h_alpha, K, d and h_c; c = (x_alpha | x_-alpha).
struct Zeta {
    Rational h = 0;
    Rational k = 0;
    Rational d = 0;
    Rational hc = 0;
    Rational c = 1;

    bool vanishes() const { return h == 0 && k == 0; }
    // zeta(h_alpha - l c K)
    Rational ladder_factor(long l) const { return h - l * c * k; }
};

// x_-alpha(l_1) ... x_-alpha(l_n) 1 with l_1 < ... < l_n
using Tuple = std::vector<long>;
using ExtVector = std::map<Tuple, Rational>;

// reorders the levels with the exterior sign; zero on a repeated level
ExtVector ext_monomial(Tuple levels, const Rational& coeff = 1);
void add_to(ExtVector& v, const Tuple& t, const Rational& c);
ExtVector lower(long l, const ExtVector& v);
ExtVector act_raising(const Zeta& z, long m, const ExtVector& v);
// x_alpha(ms[0]) ... x_alpha(ms[t-1]) applied to v (rightmost first)
ExtVector act_ladder(const Zeta& z, const std::vector<long>& ms, const ExtVector& v);
std::string to_string(const ExtVector& v);

struct BadSet {
    enum class Kind { All, Empty, Single } kind = Kind::Empty;
    long value = 0;
    bool contains(long l) const { return kind == Kind::All || (kind == Kind::Single && value == l); }
};

BadSet bad_set(const Zeta& z);
bool support_nonzero(const Zeta& z, int n, long ell);

// strictly increasing n-tuples with entries in [-bound, bound] summing to ell
std::vector<Tuple> level_set(int n, long ell, long bound);
// window that the brute-force search needs to agree with support_nonzero
long sufficient_bound(const Zeta& z, int n, long ell);
// some tuple in the window whose full ladder is nonzero
bool support_bruteforce(const Zeta& z, int n, long ell, long bound);
// dim V(zeta)_{zeta - n alpha + ell delta} restricted to the windowed tuples
long quotient_weight_dim(const Zeta& z, int n, long ell, long bound);

struct Witness {
    engine::ModVec vector;
    std::string name;
    int level = -1;
    bool nonzero = false;
    bool singular = false;
    int checks = 0;
    bool zero_in_quotient = true;
};

// h_alpha(-1) 1_zeta in the natural Verma module, checked against x_alpha(m), |m| <= window, and h_alpha(k), 0 < k <= window
Witness natural_verma_proper_vector(const Zeta& z, int window = 3);

// x_alpha(m) x_-alpha(l_1) ... 1 by generic straightening in the loop engine, reduced to V(zeta)
class GenericModel {
public:
    explicit GenericModel(const Zeta& z);
    ExtVector raise(long m, const Tuple& levels);

private:
    engine::AlgebraPtr g_;
    std::unique_ptr<engine::VermaModule> module_;
    int xp_ = 0, xm_ = 0;
};

}  // namespace lsa::sl11
