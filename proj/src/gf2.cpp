#include "mixtop/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace mixtop {

BitVec BitVec::from_string(const std::string &bits) {
    BitVec v(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        if (bits[i] == '1')
            v.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string may only contain 0 and 1");
    }
    return v;
}

BitVec &BitVec::operator^=(const BitVec &o) {
    if (o.n_ != n_)
        throw std::invalid_argument("bit vector length mismatch");
    for (size_t i = 0; i < w_.size(); i++)
        w_[i] ^= o.w_[i];
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &o) {
    if (o.n_ != n_)
        throw std::invalid_argument("bit vector length mismatch");
    for (size_t i = 0; i < w_.size(); i++)
        w_[i] &= o.w_[i];
    return *this;
}

BitVec &BitVec::operator|=(const BitVec &o) {
    if (o.n_ != n_)
        throw std::invalid_argument("bit vector length mismatch");
    for (size_t i = 0; i < w_.size(); i++)
        w_[i] |= o.w_[i];
    return *this;
}

size_t BitVec::popcount() const {
    size_t c = 0;
    for (auto w : w_)
        c += std::popcount(w);
    return c;
}

bool BitVec::dot(const BitVec &o) const {
    if (o.n_ != n_)
        throw std::invalid_argument("bit vector length mismatch");
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); i++)
        acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

bool BitVec::any() const {
    for (auto w : w_)
        if (w)
            return true;
    return false;
}

size_t BitVec::next_set(size_t from) const {
    if (from >= n_)
        return n_;
    size_t k = from >> 6;
    uint64_t w = w_[k] & (~uint64_t{0} << (from & 63));
    while (true) {
        if (w)
            return (k << 6) + std::countr_zero(w);
        if (++k >= w_.size())
            return n_;
        w = w_[k];
    }
}

std::vector<size_t> BitVec::ones() const {
    std::vector<size_t> out;
    for (size_t i = next_set(0); i < n_; i = next_set(i + 1))
        out.push_back(i);
    return out;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; i++)
        if (get(i))
            s[i] = '1';
    return s;
}

BitVec BitVec::concat(const BitVec &o) const {
    BitVec r(n_ + o.n_);
    for (size_t i : ones())
        r.set(i, true);
    for (size_t i : o.ones())
        r.set(n_ + i, true);
    return r;
}

BitVec BitVec::slice(size_t from, size_t len) const {
    if (from + len > n_)
        throw std::out_of_range("bit slice out of range");
    BitVec r(len);
    for (size_t i = next_set(from); i < from + len; i = next_set(i + 1))
        r.set(i - from, true);
    return r;
}

BitMatrix::BitMatrix(std::vector<BitVec> rows, size_t cols) : cols_(cols), r_(std::move(rows)) {
    for (auto &r : r_)
        if (r.size() != cols_)
            throw std::invalid_argument("row length does not match column count");
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; i++)
        m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string> &rows) {
    if (rows.empty())
        return {};
    std::vector<BitVec> r;
    for (auto &s : rows)
        r.push_back(BitVec::from_string(s));
    return BitMatrix(std::move(r), rows[0].size());
}

void BitMatrix::append_row(const BitVec &v) {
    if (v.size() != cols_) {
        if (r_.empty() && cols_ == 0)
            cols_ = v.size();
        else
            throw std::invalid_argument("row length does not match column count");
    }
    r_.push_back(v);
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows());
    for (size_t r = 0; r < rows(); r++)
        for (size_t c : r_[r].ones())
            t.set(c, r, true);
    return t;
}

BitVec BitMatrix::apply(const BitVec &v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("vector length does not match column count");
    BitVec out(rows());
    for (size_t r = 0; r < rows(); r++)
        out.set(r, r_[r].dot(v));
    return out;
}

BitMatrix BitMatrix::operator*(const BitMatrix &o) const {
    if (cols_ != o.rows())
        throw std::invalid_argument("matrix shapes do not compose");
    BitMatrix out(rows(), o.cols());
    for (size_t r = 0; r < rows(); r++)
        for (size_t k : r_[r].ones())
            out.r_[r] ^= o.r_[k];
    return out;
}

/* Gauss-Jordan elimination. Columns are scanned left to right and the first
 * row at or below the current position with a 1 in that column becomes the
 * pivot, so the output is a deterministic function of the input. */
EchelonForm rref(const BitMatrix &m) {
    EchelonForm out{m, {}};
    BitMatrix &a = out.reduced;
    size_t next = 0;
    for (size_t c = 0; c < a.cols() && next < a.rows(); c++) {
        size_t p = next;
        while (p < a.rows() && !a.get(p, c))
            p++;
        if (p == a.rows())
            continue;
        std::swap(a.row(p), a.row(next));
        for (size_t r = 0; r < a.rows(); r++)
            if (r != next && a.get(r, c))
                a.row(r) ^= a.row(next);
        out.pivots.push_back(c);
        next++;
    }
    return out;
}

size_t rank(const BitMatrix &m) {
    // forward elimination only
    std::vector<BitVec> rows;
    rows.reserve(m.rows());
    for (size_t r = 0; r < m.rows(); r++)
        rows.push_back(m.row(r));
    size_t next = 0;
    for (size_t c = 0; c < m.cols() && next < rows.size(); c++) {
        size_t p = next;
        while (p < rows.size() && !rows[p].get(c))
            p++;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[next]);
        for (size_t r = next + 1; r < rows.size(); r++)
            if (rows[r].get(c))
                rows[r] ^= rows[next];
        next++;
    }
    return next;
}

std::vector<BitVec> nullspace(const BitMatrix &m) {
    EchelonForm e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : e.pivots)
        is_pivot[c] = true;
    std::vector<BitVec> basis;
    for (size_t f = 0; f < m.cols(); f++) {
        if (is_pivot[f])
            continue;
        BitVec v(m.cols());
        v.set(f, true);
        for (size_t i = 0; i < e.pivots.size(); i++)
            if (e.reduced.get(i, f))
                v.set(e.pivots[i], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<BitVec> in_span(const BitMatrix &rows, const BitVec &v) {
    if (v.size() != rows.cols())
        throw std::invalid_argument("in_span: vector length " + std::to_string(v.size()) +
                                    " does not match column count " + std::to_string(rows.cols()));
    SpanBasis b(rows.cols(), rows.rows());
    for (size_t r = 0; r < rows.rows(); r++)
        b.insert(rows.row(r));
    return b.coefficients(v);
}

bool SpanBasis::insert(const BitVec &v) {
    if (v.size() != cols_)
        throw std::invalid_argument("SpanBasis: vector length mismatch");
    if (inserted_ >= cap_)
        throw std::length_error("SpanBasis: capacity exceeded");
    BitVec w = v;
    BitVec combo(cap_);
    combo.set(inserted_, true);
    for (auto &e : basis_) {
        if (w.get(e.pivot)) {
            w ^= e.v;
            combo ^= e.combo;
        }
    }
    inserted_++;
    size_t p = w.next_set(0);
    if (p == cols_)
        return false;
    basis_.push_back({std::move(w), std::move(combo), p});
    return true;
}

std::optional<BitVec> SpanBasis::coefficients(const BitVec &v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("SpanBasis: vector length mismatch");
    BitVec w = v;
    BitVec combo(cap_);
    for (auto &e : basis_) {
        if (w.get(e.pivot)) {
            w ^= e.v;
            combo ^= e.combo;
        }
    }
    if (w.any())
        return std::nullopt;
    return combo;
}

}  // namespace mixtop
