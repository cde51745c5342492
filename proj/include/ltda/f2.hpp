#pragma once

#include <cstdint>
#include <vector>

namespace ltda {

/// Dense matrix over the two-element field; rows stored as 64-bit masks, so
/// at most 64 columns. Enough for the explicit modules used by the oracle.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows), 0) {}

    static F2Matrix identity(int n) {
        F2Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }
    static F2Matrix zero(int rows, int cols) { return F2Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int r, int c) const { return (data_[static_cast<size_t>(r)] >> c) & 1u; }
    void set(int r, int c, bool v) {
        if (v)
            data_[static_cast<size_t>(r)] |= (uint64_t{1} << c);
        else
            data_[static_cast<size_t>(r)] &= ~(uint64_t{1} << c);
    }

    F2Matrix operator*(const F2Matrix& o) const;
    bool operator==(const F2Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    int rank() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<uint64_t> data_;
};

}  // namespace ltda
