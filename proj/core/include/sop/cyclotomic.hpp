#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "sop/poly.hpp"

namespace sop {

// Element of Z[zeta] with zeta = e^{2 i pi / 2^level}, written in the power
// basis 1, zeta, ..., zeta^{2^{level-1} - 1} using zeta^{2^{level-1}} = -1.
// Integer coordinates in this basis are unique, so equality is coefficient
// equality after raising both sides to a common level.
class CycInt {
public:
    explicit CycInt(unsigned level = 1);
    static CycInt zero(unsigned level = 1) { return CycInt(level); }
    static CycInt one();
    static CycInt from_int(std::int64_t n);
    // e^{2 i pi c} for a dyadic c.
    static CycInt root(const Dyadic& c);

    unsigned level() const { return level_; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }
    bool is_zero() const;

    CycInt raised(unsigned level) const;
    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const;
    CycInt times_int(std::int64_t k) const;
    // Multiply by sqrt(2)^k for k >= 0, via sqrt(2) = zeta_8 + zeta_8^{-1}.
    CycInt times_sqrt2(int k) const;

    bool operator==(const CycInt& o) const;
    std::complex<double> to_complex() const;
    std::string to_string() const;

private:
    unsigned level_;
    std::vector<std::int64_t> c_;  // length 2^(level-1)
    void add_root(std::int64_t exp2l, std::int64_t coeff);  // += coeff * zeta^exp
};

// Dense matrix over Z[zeta] with a global sqrt(2)^half_exp factor.
struct CycMatrix {
    std::size_t rows = 1;
    std::size_t cols = 1;
    int half_exp = 0;
    std::vector<CycInt> entries;  // row-major, rows*cols

    CycMatrix() : entries(1, CycInt::zero()) {}
    CycMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), entries(r * c, CycInt::zero()) {}
    CycInt& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const CycInt& at(std::size_t r, std::size_t c) const {
        return entries[r * cols + c];
    }
    std::complex<double> to_complex(std::size_t r, std::size_t c) const;
};

bool matrix_is_zero(const CycMatrix& m);
// Exact equality of the represented complex matrices; sqrt(2) exponent
// differences are folded into the entries before comparing.
bool matrix_equal(const CycMatrix& a, const CycMatrix& b);

std::string matrix_to_json(const CycMatrix& m);
std::string matrix_to_text(const CycMatrix& m);

}  // namespace sop
