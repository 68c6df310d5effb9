#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace simpfib {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Integer& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
    const Integer& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

    bool is_zero() const;
    bool is_identity() const;
    IntMatrix transpose() const;
    /// Rows [r0, r1) and columns [c0, c1).
    IntMatrix block(int r0, int r1, int c0, int c1) const;
    std::vector<Integer> column(int c) const;

    /// Elementary operations used by the Smith normal form.
    void swap_rows(int a, int b);
    void swap_cols(int a, int b);
    /// row[dst] += k * row[src]
    void add_row(int dst, int src, const Integer& k);
    /// col[dst] += k * col[src]
    void add_col(int dst, int src, const Integer& k);
    void negate_row(int r);
    void negate_col(int c);

    std::string to_string() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Integer> data_;
};

std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& v);

/**
 * D = U * M * V with D diagonal, each diagonal entry dividing the next, and
 * U, V unimodular. The inverses of U and V are tracked alongside.
 */
struct SmithForm {
    IntMatrix d;
    IntMatrix u;
    IntMatrix v;
    IntMatrix u_inverse;
    IntMatrix v_inverse;
    /// Nonzero diagonal entries, positive and in divisibility order.
    std::vector<Integer> diagonal;
    int rank() const { return static_cast<int>(diagonal.size()); }
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Some integer solution of A x = b, if one exists.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& b);

}  // namespace simpfib
