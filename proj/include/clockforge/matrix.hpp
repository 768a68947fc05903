#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace clockforge {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.  Small and value-semantic; every operator
// in this code base fits comfortably in memory (dims are capped upstream).
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    Matrix adjoint() const {
        Matrix m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o, "+=");
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o, "-=");
        for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(cplx s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix*: shape mismatch");
        Matrix m(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0)) continue;
                for (int j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        }
        return m;
    }

    std::vector<cplx> apply(const std::vector<cplx>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("Matrix::apply: size mismatch");
        std::vector<cplx> out(rows_, 0.0);
        for (int i = 0; i < rows_; ++i) {
            cplx acc = 0.0;
            for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    cplx trace() const {
        cplx t = 0.0;
        int n = rows_ < cols_ ? rows_ : cols_;
        for (int i = 0; i < n; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    double hermiticity_defect() const {
        if (rows_ != cols_) return 1e300;
        double m = 0.0;
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j) m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    bool is_square() const { return rows_ == cols_; }

private:
    void check_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("Matrix") + op + ": shape mismatch");
    }

    int rows_, cols_;
    std::vector<cplx> data_;
};

using Vector = std::vector<cplx>;

inline cplx dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm2(const Vector& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

inline void normalize(Vector& v) {
    double n = norm2(v);
    if (n == 0.0) throw std::invalid_argument("normalize: zero vector");
    for (auto& x : v) x /= n;
}

// Global phase convention used throughout: the largest-magnitude amplitude is
// made real and positive, which pins eigenvector output deterministically.
inline void fix_phase(Vector& v) {
    size_t imax = 0;
    double amax = -1.0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > amax) {
            amax = std::abs(v[i]);
            imax = i;
        }
    }
    if (amax <= 0.0) return;
    cplx phase = v[imax] / amax;
    for (auto& x : v) x /= phase;
}

// Hermitian wrapper: validates conjugate symmetry on construction and stores
// the exactly symmetrized matrix (A + A^dag)/2.
class HermitianMatrix {
public:
    explicit HermitianMatrix(Matrix m, double tol = 1e-12) {
        if (!m.is_square()) throw std::invalid_argument("HermitianMatrix: not square");
        if (m.rows() < 1) throw std::invalid_argument("HermitianMatrix: dim must be >= 1");
        double defect = m.hermiticity_defect();
        double scale = std::max(1.0, m.max_abs());
        if (defect > tol * scale)
            throw std::invalid_argument("HermitianMatrix: input not Hermitian (defect " + std::to_string(defect) + ")");
        const int n = m.rows();
        mat_ = Matrix(n, n);
        for (int i = 0; i < n; ++i) {
            mat_(i, i) = m(i, i).real();
            for (int j = i + 1; j < n; ++j) {
                cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
                mat_(i, j) = avg;
                mat_(j, i) = std::conj(avg);
            }
        }
    }

    int dim() const { return mat_.rows(); }
    const Matrix& matrix() const { return mat_; }
    const cplx& operator()(int r, int c) const { return mat_(r, c); }

private:
    Matrix mat_;
};

// Kronecker product, row-major block layout.  The cap guards against
// accidentally materializing operators too large for dense work.
inline Matrix kron(const Matrix& a, const Matrix& b, long dim_cap = 4160) {
    long rows = static_cast<long>(a.rows()) * b.rows();
    long cols = static_cast<long>(a.cols()) * b.cols();
    if (rows > dim_cap || cols > dim_cap)
        throw std::invalid_argument("kron: result dimension " + std::to_string(rows) + " exceeds cap " +
                                    std::to_string(dim_cap));
    Matrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return m;
}

inline HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b, long dim_cap = 4160) {
    return HermitianMatrix(kron(a.matrix(), b.matrix(), dim_cap));
}

// Numerical failure distinct from contract violations; the CLI maps these to
// a dedicated exit code.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace clockforge
