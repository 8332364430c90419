#include "lsa/rational.hpp"
#include "lsa/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace lsa {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
        case ErrorCode::NotARoot: return "NotARoot";
        case ErrorCode::NotSimple: return "NotSimple";
        case ErrorCode::NotIsotropic: return "NotIsotropic";
        case ErrorCode::NotABase: return "NotABase";
        case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
        case ErrorCode::RNotSimpleSubset: return "RNotSimpleSubset";
        case ErrorCode::NotParabolic: return "NotParabolic";
        case ErrorCode::IsPartition: return "IsPartition";
        case ErrorCode::XNotSubset: return "XNotSubset";
        case ErrorCode::InvalidReflection: return "InvalidReflection";
        case ErrorCode::InvalidSCombination: return "InvalidSCombination";
        case ErrorCode::WeightOffLattice: return "WeightOffLattice";
        case ErrorCode::TruncationOverflow: return "TruncationOverflow";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::NoWitness: return "NoWitness";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& s) {
    using boost::multiprecision::mpz_int;
    auto bad = [&] { return Error(ErrorCode::InvalidInput, "bad rational '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto digits = [&](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = (allow_sign && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw bad();
    if (num[0] == '+') num = num.substr(1);
    mpz_int d(den);
    if (d == 0) throw bad();
    return Rational(mpz_int(num)) / Rational(d);
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

long to_long(const Rational& q) {
    if (!is_integer(q)) throw Error(ErrorCode::InvalidInput, "non-integer " + to_string(q));
    return numerator(q).convert_to<long>();
}

std::string thr_to_string(Thr t) {
    if (t == kNegInf) return "-inf";
    if (t == kPosInf) return "+inf";
    return std::to_string(t);
}

Thr parse_thr(const std::string& s) {
    if (s == "-inf") return kNegInf;
    if (s == "+inf" || s == "inf") return kPosInf;
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw 0;
        return v;
    } catch (...) {
        throw Error(ErrorCode::InvalidInput, "bad threshold '" + s + "'");
    }
}

QVec primitive(const QVec& v) {
    Integer g = 0, l = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) == 0) continue;
        g = gcd(g, Integer(numerator(v(i))));
        l = lcm(l, Integer(denominator(v(i))));
    }
    if (g == 0) return v;
    Rational scale(l, g);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) {
            if (v(i) < 0) scale = -scale;
            break;
        }
    return v * scale;
}

}  // namespace lsa
