#pragma once

// Truncated formal power series with square integer-matrix coefficients.

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "preproj/field.hpp"

namespace preproj {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in series arithmetic");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in series arithmetic");
  return r;
}

}  // namespace detail

/// Dense square matrix of 64-bit integers with overflow-checked arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : n_(rows.size()) {
    for (const auto& r : rows) {
      if (r.size() != n_) throw std::invalid_argument("IntMatrix must be square");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<std::int64_t>& d) {
    IntMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t size() const { return n_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::int64_t x) { return x == 0; });
  }
  bool is_identity() const { return *this == identity(n_); }

  std::vector<std::vector<std::int64_t>> rows() const {
    std::vector<std::vector<std::int64_t>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i].assign(a_.begin() + i * n_, a_.begin() + (i + 1) * n_);
    return out;
  }

  friend IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
    x.check_same(y);
    IntMatrix r(x.n_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = detail::checked_add(x.a_[k], y.a_[k]);
    return r;
  }
  friend IntMatrix operator-(const IntMatrix& x) {
    IntMatrix r(x.n_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = detail::checked_mul(x.a_[k], -1);
    return r;
  }
  friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) { return x + (-y); }
  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    x.check_same(y);
    IntMatrix r(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t s = 0; s < x.n_; ++s) {
        std::int64_t v = x(i, s);
        if (v == 0) continue;
        for (std::size_t j = 0; j < x.n_; ++j)
          r(i, j) = detail::checked_add(r(i, j), detail::checked_mul(v, y(s, j)));
      }
    return r;
  }
  friend IntMatrix operator*(std::int64_t c, const IntMatrix& y) {
    IntMatrix r(y.n_);
    for (std::size_t k = 0; k < y.a_.size(); ++k) r.a_[k] = detail::checked_mul(c, y.a_[k]);
    return r;
  }
  bool operator==(const IntMatrix&) const = default;

 private:
  void check_same(const IntMatrix& y) const {
    if (n_ != y.n_) throw std::invalid_argument("matrix size mismatch");
  }

  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

/// h(t) = sum_{d=0}^{N} s_d t^d with n x n integer coefficients. Negative
/// coefficients are legal data.
class MatrixSeries {
 public:
  MatrixSeries() = default;
  MatrixSeries(std::size_t n, std::size_t degree) : n_(n), coeffs_(degree + 1, IntMatrix(n)) {}
  explicit MatrixSeries(std::vector<IntMatrix> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("series needs at least the constant term");
    n_ = coeffs_.front().size();
    for (const auto& c : coeffs_)
      if (c.size() != n_) throw std::invalid_argument("series coefficients must share one size");
  }

  static MatrixSeries identity(std::size_t n, std::size_t degree) {
    MatrixSeries s(n, degree);
    s.coeffs_[0] = IntMatrix::identity(n);
    return s;
  }

  /// a0 + a1 t + a2 t^2 padded with zeros up to `degree`.
  static MatrixSeries polynomial(const std::vector<IntMatrix>& low, std::size_t degree) {
    if (low.empty()) throw std::invalid_argument("empty polynomial");
    MatrixSeries s(low.front().size(), degree);
    for (std::size_t d = 0; d < low.size() && d <= degree; ++d) s.coeffs_[d] = low[d];
    return s;
  }

  std::size_t size() const { return n_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  const IntMatrix& operator[](std::size_t d) const { return coeffs_.at(d); }
  IntMatrix& operator[](std::size_t d) { return coeffs_.at(d); }
  const std::vector<IntMatrix>& coefficients() const { return coeffs_; }

  MatrixSeries truncated(std::size_t degree) const {
    if (degree > this->degree()) throw std::invalid_argument("cannot extend a truncated series");
    return MatrixSeries(std::vector<IntMatrix>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(degree) + 1));
  }

  bool operator==(const MatrixSeries&) const = default;

  friend MatrixSeries operator+(const MatrixSeries& s, const MatrixSeries& u) {
    check_size(s, u);
    std::size_t deg = std::min(s.degree(), u.degree());
    MatrixSeries r(s.n_, deg);
    for (std::size_t d = 0; d <= deg; ++d) r.coeffs_[d] = s[d] + u[d];
    return r;
  }
  friend MatrixSeries operator-(const MatrixSeries& s, const MatrixSeries& u) {
    check_size(s, u);
    std::size_t deg = std::min(s.degree(), u.degree());
    MatrixSeries r(s.n_, deg);
    for (std::size_t d = 0; d <= deg; ++d) r.coeffs_[d] = s[d] - u[d];
    return r;
  }

  static void check_size(const MatrixSeries& s, const MatrixSeries& u) {
    if (s.n_ != u.n_) throw std::invalid_argument("series size mismatch");
  }

 private:
  std::size_t n_ = 0;
  std::vector<IntMatrix> coeffs_;
};

/// Cauchy product, truncated to the smaller of the two degrees.
inline MatrixSeries mul(const MatrixSeries& s, const MatrixSeries& u) {
  MatrixSeries::check_size(s, u);
  std::size_t deg = std::min(s.degree(), u.degree());
  MatrixSeries r(s.size(), deg);
  for (std::size_t d = 0; d <= deg; ++d)
    for (std::size_t e = 0; e <= d; ++e) r[d] = r[d] + s[e] * u[d - e];
  return r;
}

inline MatrixSeries operator*(const MatrixSeries& s, const MatrixSeries& u) { return mul(s, u); }

/// Two-sided inverse up to min(degree, s.degree()); s_0 must be the identity.
inline MatrixSeries inverse(const MatrixSeries& s, std::size_t degree) {
  if (!s[0].is_identity()) throw std::invalid_argument("series inverse needs identity constant term");
  std::size_t deg = std::min(degree, s.degree());
  MatrixSeries r(s.size(), deg);
  r[0] = IntMatrix::identity(s.size());
  for (std::size_t d = 1; d <= deg; ++d) {
    IntMatrix acc(s.size());
    for (std::size_t e = 1; e <= d; ++e) acc = acc + s[e] * r[d - e];
    r[d] = -acc;
  }
  return r;
}

/// (1 - C t + D t^2)^{-1} up to `degree`.
inline MatrixSeries closed_form(const IntMatrix& c, const IntMatrix& d, std::size_t degree) {
  if (c.size() != d.size()) throw std::invalid_argument("closed_form: C and D differ in size");
  const std::size_t n = c.size();
  return inverse(MatrixSeries::polynomial({IntMatrix::identity(n), -c, d}, degree), degree);
}

/// (1 - alpha - beta)^{-1} with alpha = 1 - hA^{-1}, beta = 1 - hB^{-1}.
inline MatrixSeries free_product_series(const MatrixSeries& ha, const MatrixSeries& hb, std::size_t degree) {
  MatrixSeries::check_size(ha, hb);
  if (!ha[0].is_identity() || !hb[0].is_identity())
    throw std::invalid_argument("free_product_series needs identity constant terms");
  std::size_t deg = std::min({degree, ha.degree(), hb.degree()});
  const std::size_t n = ha.size();
  MatrixSeries one = MatrixSeries::identity(n, deg);
  MatrixSeries alpha = one - inverse(ha, deg);
  MatrixSeries beta = one - inverse(hb, deg);
  return inverse(one - alpha - beta, deg);
}

struct Witness {
  std::size_t degree = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  bool operator==(const Witness&) const = default;
};

struct Comparison {
  enum class Outcome { Equal, FirstLeq, FirstGeq, Incomparable };
  Outcome outcome = Outcome::Equal;
  /// First differing entry in (degree, row, col) order; empty when Equal.
  std::optional<Witness> witness;

  bool first_geq() const { return outcome == Outcome::Equal || outcome == Outcome::FirstGeq; }
  bool first_leq() const { return outcome == Outcome::Equal || outcome == Outcome::FirstLeq; }
};

inline Comparison termwise_compare(const MatrixSeries& s, const MatrixSeries& u) {
  if (s.size() != u.size() || s.degree() != u.degree()) throw std::invalid_argument("termwise_compare: shape mismatch");
  bool some_less = false, some_greater = false;
  Comparison out;
  for (std::size_t d = 0; d <= s.degree(); ++d)
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) {
        auto x = s[d](i, j), y = u[d](i, j);
        if (x == y) continue;
        if (!out.witness) out.witness = Witness{d, i, j};
        (x < y ? some_less : some_greater) = true;
      }
  using O = Comparison::Outcome;
  out.outcome = some_less ? (some_greater ? O::Incomparable : O::FirstLeq) : (some_greater ? O::FirstGeq : O::Equal);
  return out;
}

/// First entry (degree, row, col) with a negative value, if any.
inline std::optional<Witness> first_negative(const MatrixSeries& s) {
  for (std::size_t d = 0; d <= s.degree(); ++d)
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j)
        if (s[d](i, j) < 0) return Witness{d, i, j};
  return std::nullopt;
}

inline std::string to_string(Comparison::Outcome o) {
  switch (o) {
    case Comparison::Outcome::Equal: return "equal";
    case Comparison::Outcome::FirstLeq: return "first<=second";
    case Comparison::Outcome::FirstGeq: return "first>=second";
    case Comparison::Outcome::Incomparable: return "incomparable";
  }
  return "?";
}

// ---- text and JSON forms ----

inline void write_matrix_tsv(std::ostream& os, const IntMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) os << '\t' << m(i, j);
}

/// One line per degree: the degree, then the matrix row-major, tab separated.
inline void write_tsv(std::ostream& os, const MatrixSeries& s) {
  for (std::size_t d = 0; d <= s.degree(); ++d) {
    os << d;
    write_matrix_tsv(os, s[d]);
    os << '\n';
  }
}

inline std::string to_tsv(const MatrixSeries& s) {
  std::ostringstream os;
  write_tsv(os, s);
  return os.str();
}

inline nlohmann::json matrix_to_json(const IntMatrix& m) { return m.rows(); }

inline IntMatrix matrix_from_json(const nlohmann::json& j) {
  auto rows = j.get<std::vector<std::vector<std::int64_t>>>();
  IntMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw InputError("matrix in JSON must be square");
    for (std::size_t k = 0; k < rows.size(); ++k) m(i, k) = rows[i][k];
  }
  return m;
}

/// [{"degree": d, "matrix": [[...]]}, ...]
inline nlohmann::json to_json(const MatrixSeries& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t d = 0; d <= s.degree(); ++d) arr.push_back({{"degree", d}, {"matrix", matrix_to_json(s[d])}});
  return arr;
}

inline MatrixSeries series_from_json(const nlohmann::json& j) {
  std::vector<IntMatrix> coeffs;
  for (const auto& e : j) {
    if (e.at("degree").get<std::size_t>() != coeffs.size()) throw InputError("series degrees must be 0,1,2,...");
    coeffs.push_back(matrix_from_json(e.at("matrix")));
  }
  if (coeffs.empty()) throw InputError("empty series");
  return MatrixSeries(std::move(coeffs));
}

inline nlohmann::json to_json(const Witness& w) { return {{"degree", w.degree}, {"row", w.row}, {"col", w.col}}; }

inline Witness witness_from_json(const nlohmann::json& j) {
  return {j.at("degree").get<std::size_t>(), j.at("row").get<std::size_t>(), j.at("col").get<std::size_t>()};
}

}  // namespace preproj
