#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace detform {

// Dense rectangular matrix over an arbitrary value type (polynomials,
// rationals, field elements).  Value semantics throughout.
template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}

    Mat(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat from_rows(std::vector<std::vector<T>> rows) {
        Mat m;
        m.rows_ = rows.size();
        m.cols_ = rows.empty() ? 0 : rows.front().size();
        m.data_.reserve(m.rows_ * m.cols_);
        for (auto& r : rows) {
            if (r.size() != m.cols_) throw std::invalid_argument("Mat: ragged rows");
            for (auto& v : r) m.data_.push_back(std::move(v));
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    Mat without_row_col(std::size_t ri, std::size_t cj) const {
        Mat m;
        m.rows_ = rows_ - 1;
        m.cols_ = cols_ - 1;
        m.data_.reserve(m.rows_ * m.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == ri) continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j == cj) continue;
                m.data_.push_back((*this)(i, j));
            }
        }
        return m;
    }

    Mat select_columns(const std::vector<std::size_t>& cols) const {
        Mat m;
        m.rows_ = rows_;
        m.cols_ = cols.size();
        m.data_.reserve(m.rows_ * m.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j : cols) {
                if (j >= cols_) throw std::out_of_range("Mat::select_columns: column out of range");
                m.data_.push_back((*this)(i, j));
            }
        return m;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

}  // namespace detform
