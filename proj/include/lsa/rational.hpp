#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace lsa {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using QVec = Vec<Rational>;
using QMat = Mat<Rational>;
using IVec = std::vector<int>;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);
bool is_integer(const Rational& q);
long to_long(const Rational& q);
// Integer multiple with coprime entries and positive leading entry.
QVec primitive(const QVec& v);

// Extended integers for affine thresholds.
using Thr = std::int64_t;
inline constexpr Thr kNegInf = std::numeric_limits<Thr>::min() / 4;
inline constexpr Thr kPosInf = std::numeric_limits<Thr>::max() / 4;

inline bool is_finite(Thr t) { return t != kNegInf && t != kPosInf; }
std::string thr_to_string(Thr t);
Thr parse_thr(const std::string& s);

}  // namespace lsa
