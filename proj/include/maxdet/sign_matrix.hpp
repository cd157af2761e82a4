#ifndef MAXDET_SIGN_MATRIX_HPP
#define MAXDET_SIGN_MATRIX_HPP

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxdet {

/// Dense row-major matrix with entries in {-1, 0, +1}.
class SignMatrix {
public:
  SignMatrix() = default;
  SignMatrix(std::size_t rows, std::size_t cols, std::int8_t fill = 1)
      : rows_(rows), cols_(cols), entries_(rows * cols, fill)
  {
    if (rows == 0 || cols == 0) throw std::invalid_argument("SignMatrix: dimensions must be positive");
    check_entry(fill);
  }

  static SignMatrix identity(std::size_t n, std::int8_t diag = 1)
  {
    SignMatrix m(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, diag);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  int operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  void set(std::size_t i, std::size_t j, int v)
  {
    check_entry(v);
    entries_[i * cols_ + j] = static_cast<std::int8_t>(v);
  }

  bool has_zero() const
  {
    for (auto e : entries_)
      if (e == 0) return true;
    return false;
  }

  SignMatrix transposed() const
  {
    SignMatrix t(cols_, rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = entries_[i * cols_ + j];
    return t;
  }

  void negate_row(std::size_t i)
  {
    for (std::size_t j = 0; j < cols_; ++j) entries_[i * cols_ + j] = static_cast<std::int8_t>(-entries_[i * cols_ + j]);
  }

  void negate_col(std::size_t j)
  {
    for (std::size_t i = 0; i < rows_; ++i) entries_[i * cols_ + j] = static_cast<std::int8_t>(-entries_[i * cols_ + j]);
  }

  void swap_rows(std::size_t a, std::size_t b)
  {
    for (std::size_t j = 0; j < cols_; ++j) std::swap(entries_[a * cols_ + j], entries_[b * cols_ + j]);
  }

  const std::vector<std::int8_t>& entries() const { return entries_; }

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

private:
  static void check_entry(int v)
  {
    if (v < -1 || v > 1) throw std::invalid_argument("SignMatrix: entry out of {-1,0,1}");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int8_t> entries_;
};

/// Writes "rows cols" then one line of '+'/'-' per row. Zeros are not representable.
inline void write_sign_matrix(std::ostream& os, const SignMatrix& m)
{
  if (m.has_zero()) throw std::invalid_argument("write_sign_matrix: zero entries cannot be exported");
  os << m.rows() << ' ' << m.cols() << '\n';
  std::string line(m.cols(), '+');
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) line[j] = m(i, j) > 0 ? '+' : '-';
    os << line << '\n';
  }
}

inline std::string to_text(const SignMatrix& m)
{
  std::ostringstream os;
  write_sign_matrix(os, m);
  return os.str();
}

inline SignMatrix read_sign_matrix(std::istream& is)
{
  std::size_t rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows == 0 || cols == 0)
    throw std::runtime_error("read_sign_matrix: bad header, expected \"rows cols\"");
  SignMatrix m(rows, cols);
  std::string line;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!(is >> line) || line.size() != cols)
      throw std::runtime_error("read_sign_matrix: row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < cols; ++j) {
      if (line[j] == '+')
        m.set(i, j, 1);
      else if (line[j] == '-')
        m.set(i, j, -1);
      else
        throw std::runtime_error("read_sign_matrix: unexpected character '" + std::string(1, line[j]) + "'");
    }
  }
  return m;
}

}  // namespace maxdet

#endif  // MAXDET_SIGN_MATRIX_HPP
