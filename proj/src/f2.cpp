#include "ltda/f2.hpp"

#include <stdexcept>

namespace ltda {

F2Matrix F2Matrix::operator*(const F2Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("F2Matrix: dimension mismatch in product");
    F2Matrix out(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r) {
        uint64_t acc = 0;
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) acc ^= o.data_[static_cast<size_t>(c)];
        out.data_[static_cast<size_t>(r)] = acc;
    }
    return out;
}

int F2Matrix::rank() const {
    std::vector<uint64_t> rows = data_;
    int rank = 0;
    for (int c = 0; c < cols_; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if ((rows[static_cast<size_t>(r)] >> c) & 1u) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<size_t>(pivot)], rows[static_cast<size_t>(rank)]);
        for (int r = 0; r < rows_; ++r)
            if (r != rank && ((rows[static_cast<size_t>(r)] >> c) & 1u))
                rows[static_cast<size_t>(r)] ^= rows[static_cast<size_t>(rank)];
        ++rank;
    }
    return rank;
}

}  // namespace ltda
