#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixtop {

// Packed bit vector over GF(2). Bits past size() are always zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_string(const std::string &bits);

    size_t size() const { return n_; }
    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }
    void flip(size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVec &operator^=(const BitVec &o);
    BitVec &operator&=(const BitVec &o);
    BitVec &operator|=(const BitVec &o);
    friend BitVec operator^(BitVec a, const BitVec &b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec &b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec &b) { return a |= b; }
    bool operator==(const BitVec &o) const = default;

    size_t popcount() const;
    // parity of popcount(a & b)
    bool dot(const BitVec &o) const;
    bool any() const;
    // index of lowest set bit at or after `from`, or size() if none
    size_t next_set(size_t from) const;

    std::vector<size_t> ones() const;
    std::string to_string() const;

    const std::vector<uint64_t> &words() const { return w_; }
    std::vector<uint64_t> &words() { return w_; }

    // concatenation
    BitVec concat(const BitVec &o) const;
    // bits [from, from+len)
    BitVec slice(size_t from, size_t len) const;

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols) : cols_(cols), r_(rows, BitVec(cols)) {}
    explicit BitMatrix(std::vector<BitVec> rows, size_t cols);

    static BitMatrix identity(size_t n);
    static BitMatrix from_strings(const std::vector<std::string> &rows);

    size_t rows() const { return r_.size(); }
    size_t cols() const { return cols_; }
    bool get(size_t r, size_t c) const { return r_[r].get(c); }
    void set(size_t r, size_t c, bool v) { r_[r].set(c, v); }
    const BitVec &row(size_t r) const { return r_[r]; }
    BitVec &row(size_t r) { return r_[r]; }
    void append_row(const BitVec &v);
    bool operator==(const BitMatrix &o) const = default;

    BitMatrix transpose() const;
    // m * v with v as a column vector
    BitVec apply(const BitVec &v) const;
    BitMatrix operator*(const BitMatrix &o) const;

private:
    size_t cols_ = 0;
    std::vector<BitVec> r_;
};

struct EchelonForm {
    BitMatrix reduced;           // fully reduced rows; zero rows trail
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};

size_t rank(const BitMatrix &m);
EchelonForm rref(const BitMatrix &m);
std::vector<BitVec> nullspace(const BitMatrix &m);
// c with sum_i c_i rows_i == v, if one exists
std::optional<BitVec> in_span(const BitMatrix &rows, const BitVec &v);

// Incremental row basis. Keeps each accepted row together with the record of
// which inserted rows it was built from, so membership queries can return
// coefficients over the insertion order.
class SpanBasis {
public:
    // capacity bounds the number of insert() calls
    SpanBasis(size_t cols, size_t capacity) : cols_(cols), cap_(capacity) {}
    // true if v was independent (and is now part of the basis)
    bool insert(const BitVec &v);
    std::optional<BitVec> coefficients(const BitVec &v) const;
    size_t size() const { return inserted_; }
    size_t rank() const { return basis_.size(); }

private:
    struct Entry {
        BitVec v;
        BitVec combo;
        size_t pivot;
    };
    size_t cols_;
    size_t cap_;
    size_t inserted_ = 0;
    std::vector<Entry> basis_;
};

}  // namespace mixtop
