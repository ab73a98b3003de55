#include "sop/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace sop {

CycInt::CycInt(unsigned level)
    : level_(level == 0 ? 1 : level), c_(std::size_t{1} << (level_ - 1), 0) {}

CycInt CycInt::one() {
    CycInt r(1);
    r.c_[0] = 1;
    return r;
}

CycInt CycInt::from_int(std::int64_t n) {
    CycInt r(1);
    r.c_[0] = n;
    return r;
}

void CycInt::add_root(std::int64_t exp2l, std::int64_t coeff) {
    const std::int64_t order = std::int64_t{1} << level_;
    const std::int64_t half = order / 2;
    exp2l %= order;
    if (exp2l < 0) exp2l += order;
    if (exp2l >= half)
        c_[exp2l - half] -= coeff;
    else
        c_[exp2l] += coeff;
}

CycInt CycInt::root(const Dyadic& c) {
    const unsigned level = std::max<unsigned>(1, c.log_den);
    CycInt r(level);
    // c = num / 2^log_den; as an exponent of zeta_{2^level} that is num
    // scaled up by the level difference.
    r.add_root(c.num << (level - c.log_den), 1);
    return r;
}

bool CycInt::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](auto x) { return x == 0; });
}

CycInt CycInt::raised(unsigned level) const {
    if (level <= level_) return *this;
    CycInt r(level);
    const unsigned shift = level - level_;
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i << shift] = c_[i];
    return r;
}

CycInt CycInt::operator+(const CycInt& o) const {
    const unsigned lv = std::max(level_, o.level_);
    CycInt a = raised(lv), b = o.raised(lv);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

CycInt CycInt::operator-(const CycInt& o) const {
    return *this + o.times_int(-1);
}

CycInt CycInt::operator*(const CycInt& o) const {
    const unsigned lv = std::max(level_, o.level_);
    CycInt a = raised(lv), b = o.raised(lv);
    CycInt r(lv);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            r.add_root(std::int64_t(i + j), a.c_[i] * b.c_[j]);
        }
    }
    return r;
}

CycInt CycInt::times_int(std::int64_t k) const {
    CycInt r = *this;
    for (auto& x : r.c_) x *= k;
    return r;
}

CycInt CycInt::times_sqrt2(int k) const {
    if (k < 0) throw Error("times_sqrt2 expects a nonnegative exponent");
    CycInt r = *this;
    if (k >= 2) r = r.times_int(std::int64_t{1} << (k / 2));
    if (k % 2) {
        CycInt s2(3);
        s2.add_root(1, 1);   // zeta_8
        s2.add_root(7, 1);   // zeta_8^{-1}
        r = r * s2;
    }
    return r;
}

bool CycInt::operator==(const CycInt& o) const {
    const unsigned lv = std::max(level_, o.level_);
    return raised(lv).c_ == o.raised(lv).c_;
}

std::complex<double> CycInt::to_complex() const {
    std::complex<double> r = 0;
    const double order = double(std::int64_t{1} << level_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const double ang = 2.0 * std::numbers::pi * double(i) / order;
        r += double(c_[i]) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return r;
}

std::string CycInt::to_string() const {
    if (is_zero()) return "0";
    const std::int64_t order = std::int64_t{1} << level_;
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] > 0 ? "+" : "");
        first = false;
        std::int64_t k = c_[i];
        if (i == 0) {
            os << k;
            continue;
        }
        if (k == -1)
            os << "-";
        else if (k != 1)
            os << k << "*";
        if (order == 4 && i == 1)
            os << "i";
        else if (order == 8 && i == 1)
            os << "w";
        else if (order == 8)
            os << "w^" << i;
        else
            os << "z" << order << "^" << i;
    }
    return os.str();
}

std::complex<double> CycMatrix::to_complex(std::size_t r, std::size_t c) const {
    return at(r, c).to_complex() * std::pow(std::sqrt(2.0), double(half_exp));
}

bool matrix_is_zero(const CycMatrix& m) {
    return std::all_of(m.entries.begin(), m.entries.end(),
                       [](const CycInt& e) { return e.is_zero(); });
}

bool matrix_equal(const CycMatrix& a, const CycMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    // Fold the sqrt(2) difference into the side with the larger exponent.
    const CycMatrix* lo = &a;
    const CycMatrix* hi = &b;
    if (a.half_exp > b.half_exp) std::swap(lo, hi);
    const int d = hi->half_exp - lo->half_exp;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (!(hi->entries[i].times_sqrt2(d) == lo->entries[i])) return false;
    }
    return true;
}

std::string matrix_to_json(const CycMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["half_exp"] = m.half_exp;
    nlohmann::json es = nlohmann::json::array();
    for (const auto& e : m.entries)
        es.push_back({{"coeffs", e.coeffs()}, {"level", e.level()}});
    j["entries"] = es;
    return j.dump();
}

std::string matrix_to_text(const CycMatrix& m) {
    std::ostringstream os;
    if (m.half_exp != 0) os << "sqrt(2)^" << m.half_exp << " *\n";
    std::vector<std::string> cells(m.entries.size());
    std::size_t width = 1;
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        cells[i] = m.entries[i].to_string();
        width = std::max(width, cells[i].size());
    }
    for (std::size_t r = 0; r < m.rows; ++r) {
        os << "[ ";
        for (std::size_t c = 0; c < m.cols; ++c) {
            const std::string& s = cells[r * m.cols + c];
            os << s << std::string(width - s.size() + 1, ' ');
        }
        os << "]\n";
    }
    return os.str();
}

}  // namespace sop
