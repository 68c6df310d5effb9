#include "simpfib/integer_matrix.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

namespace simpfib {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

bool IntMatrix::is_zero() const {
    for (const Integer& x : data_)
        if (x != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::block(int r0, int r1, int c0, int c1) const {
    IntMatrix b(r1 - r0, c1 - c0);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
    return b;
}

std::vector<Integer> IntMatrix::column(int c) const {
    std::vector<Integer> out(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) out[static_cast<std::size_t>(i)] = (*this)(i, c);
    return out;
}

void IntMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(int dst, int src, const Integer& k) {
    if (k == 0) return;
    for (int j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col(int dst, int src, const Integer& k) {
    if (k == 0) return;
    for (int i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(int r) {
    for (int j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(int c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

std::string IntMatrix::to_string() const {
    std::ostringstream out;
    out << '[';
    for (int i = 0; i < rows_; ++i) {
        out << (i ? ",[" : "[");
        for (int j = 0; j < cols_; ++j) out << (j ? "," : "") << (*this)(i, j);
        out << ']';
    }
    out << ']';
    return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Integer& x = a(i, k);
            if (x == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) c(i, j) += x * b(k, j);
        }
    return c;
}

std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& v) {
    if (static_cast<std::size_t>(a.cols()) != v.size()) throw std::invalid_argument("matrix dimension mismatch");
    std::vector<Integer> out(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0 && v[static_cast<std::size_t>(k)] != 0) out[static_cast<std::size_t>(i)] += a(i, k) * v[static_cast<std::size_t>(k)];
    return out;
}

namespace {

// Row and column operations applied to D, mirrored on U (and U^-1) or V (and V^-1).
struct Reducer {
    SmithForm& s;

    void swap_rows(int a, int b) {
        s.d.swap_rows(a, b);
        s.u.swap_rows(a, b);
        s.u_inverse.swap_cols(a, b);
    }
    void swap_cols(int a, int b) {
        s.d.swap_cols(a, b);
        s.v.swap_cols(a, b);
        s.v_inverse.swap_rows(a, b);
    }
    void add_row(int dst, int src, const Integer& k) {
        s.d.add_row(dst, src, k);
        s.u.add_row(dst, src, k);
        s.u_inverse.add_col(src, dst, -k);
    }
    void add_col(int dst, int src, const Integer& k) {
        s.d.add_col(dst, src, k);
        s.v.add_col(dst, src, k);
        s.v_inverse.add_row(src, dst, -k);
    }
    void negate_row(int r) {
        s.d.negate_row(r);
        s.u.negate_row(r);
        s.u_inverse.negate_col(r);
    }
};

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), IntMatrix::identity(m.rows()),
                IntMatrix::identity(m.cols()), {}};
    Reducer r{s};
    IntMatrix& d = s.d;
    const int rows = m.rows();
    const int cols = m.cols();

    for (int t = 0; t < std::min(rows, cols); ++t) {
        // Pivot: an entry of least absolute value in the remaining block.
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (d(i, j) != 0 && (pi < 0 || abs_value(d(i, j)) < abs_value(d(pi, pj)))) pi = i, pj = j;
        if (pi < 0) break;
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);

        for (;;) {
            bool changed = false;
            for (int i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                r.add_row(i, t, -(d(i, t) / d(t, t)));
                if (d(i, t) != 0) {
                    r.swap_rows(t, i);
                    changed = true;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                r.add_col(j, t, -(d(t, j) / d(t, t)));
                if (d(t, j) != 0) {
                    r.swap_cols(t, j);
                    changed = true;
                }
            }
            if (changed) continue;
            // Row and column are clear; enforce divisibility of the rest.
            int bad = -1;
            for (int i = t + 1; i < rows && bad < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            r.add_row(t, bad, 1);
        }
        if (d(t, t) < 0) r.negate_row(t);
        s.diagonal.push_back(d(t, t));
    }
    return s;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& b) {
    const SmithForm s = smith_normal_form(a);
    const std::vector<Integer> ub = s.u * b;
    std::vector<Integer> y(static_cast<std::size_t>(a.cols()));
    for (int i = 0; i < a.rows(); ++i) {
        const Integer& rhs = ub[static_cast<std::size_t>(i)];
        if (i < s.rank()) {
            const Integer& di = s.diagonal[static_cast<std::size_t>(i)];
            if (rhs % di != 0) return std::nullopt;
            y[static_cast<std::size_t>(i)] = rhs / di;
        } else if (rhs != 0) {
            return std::nullopt;
        }
    }
    return s.v * y;
}

}  // namespace simpfib
