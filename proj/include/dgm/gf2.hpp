#pragma once

#include "dgm/core.hpp"

namespace dgm {

// Dense GF(2) matrix with labelled rows and columns, stored as machine-word
// bit rows. Values are immutable once built; all operations return copies.
struct Gf2Matrix {
  LabelIndex row_index;
  LabelIndex col_index;
  std::vector<Mask> rows;  // rows[i] bit j = entry (i, j)

  Gf2Matrix() = default;
  Gf2Matrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
            std::vector<Mask> r)
      : row_index(std::move(row_labels)), col_index(std::move(col_labels)), rows(std::move(r)) {
    if ((int)rows.size() != row_index.size())
      throw ArgumentError("row count does not match row labels");
    if (col_index.size() > 64) throw ResourceError("more than 64 columns");
    Mask allowed = full_mask(col_index.size());
    for (auto& row : rows)
      if (row & ~allowed) throw ArgumentError("row has bits outside the column range");
  }

  int n_rows() const { return (int)rows.size(); }
  int n_cols() const { return col_index.size(); }

  bool get(int i, int j) const { return has_bit(rows[i], j); }

  bool is_symmetric() const {
    if (n_rows() != n_cols()) return false;
    for (int i = 0; i < n_rows(); ++i)
      for (int j = i + 1; j < n_cols(); ++j)
        if (get(i, j) != get(j, i)) return false;
    return true;
  }
};

// Row rank by Gaussian elimination with first-nonzero pivoting.
inline int gf2_rank(std::vector<Mask> rows) {
  int rank = 0;
  for (int j = 0; j < 64; ++j) {
    int p = -1;
    for (int i = rank; i < (int)rows.size(); ++i)
      if (has_bit(rows[i], j)) { p = i; break; }
    if (p < 0) continue;
    std::swap(rows[rank], rows[p]);
    for (int i = 0; i < (int)rows.size(); ++i)
      if (i != rank && has_bit(rows[i], j)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

inline int rank(const Gf2Matrix& m) { return gf2_rank(m.rows); }

namespace detail {

// Extracts the square submatrix of `m` on the index set `x` (dense bit rows
// in the compressed coordinate order of x).
inline std::vector<Mask> principal_submatrix(const Gf2Matrix& m, Mask x) {
  std::vector<int> idx;
  for (int i = 0; i < m.n_cols(); ++i)
    if (has_bit(x, i)) idx.push_back(i);
  std::vector<Mask> sub(idx.size(), 0);
  for (int a = 0; a < (int)idx.size(); ++a)
    for (int b = 0; b < (int)idx.size(); ++b)
      if (m.get(idx[a], idx[b])) sub[a] |= bit(b);
  return sub;
}

// Inverts a k x k GF(2) matrix given as bit rows; nullopt when singular.
inline std::optional<std::vector<Mask>> gf2_inverse(std::vector<Mask> a) {
  int k = (int)a.size();
  std::vector<Mask> inv(k);
  for (int i = 0; i < k; ++i) inv[i] = bit(i);
  for (int j = 0; j < k; ++j) {
    int p = -1;
    for (int i = j; i < k; ++i)
      if (has_bit(a[i], j)) { p = i; break; }
    if (p < 0) return std::nullopt;
    std::swap(a[j], a[p]);
    std::swap(inv[j], inv[p]);
    for (int i = 0; i < k; ++i)
      if (i != j && has_bit(a[i], j)) { a[i] ^= a[j]; inv[i] ^= inv[j]; }
  }
  return inv;
}

}  // namespace detail

inline Mask label_set_mask(const Gf2Matrix& a, const std::vector<std::string>& x) {
  return a.col_index.mask_of(x);
}

// A[X] nonsingular? A[empty] counts as nonsingular.
inline bool principal_nonsingular(const Gf2Matrix& a, Mask x) {
  if (x == 0) return true;
  auto sub = detail::principal_submatrix(a, x);
  return gf2_rank(sub) == (int)sub.size();
}

inline bool principal_nonsingular(const Gf2Matrix& a, const std::vector<std::string>& x) {
  return principal_nonsingular(a, label_set_mask(a, x));
}

// Principal pivot transform A*X. Over GF(2) the block formula is
//   [ a^-1       a^-1 b          ]
//   [ c a^-1     d + c a^-1 b    ]
// on the (X, V-X) block split. Requires A[X] nonsingular.
inline Gf2Matrix pivot(const Gf2Matrix& a, Mask x) {
  if (a.n_rows() != a.n_cols()) throw ArgumentError("pivot needs a square matrix");
  int n = a.n_cols();
  if (x == 0) return a;

  std::vector<int> xi, yi;
  for (int i = 0; i < n; ++i) (has_bit(x, i) ? xi : yi).push_back(i);
  int k = (int)xi.size();

  auto alpha = detail::principal_submatrix(a, x);
  auto inv = detail::gf2_inverse(alpha);
  if (!inv) throw ArgumentError("pivot on singular principal submatrix");

  // b[k rows][|Y| bits], c[|Y| rows][k bits]
  std::vector<Mask> b(k, 0), c(yi.size(), 0), d(yi.size(), 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < (int)yi.size(); ++j)
      if (a.get(xi[i], yi[j])) b[i] |= bit(j);
  for (int i = 0; i < (int)yi.size(); ++i) {
    for (int j = 0; j < k; ++j)
      if (a.get(yi[i], xi[j])) c[i] |= bit(j);
    for (int j = 0; j < (int)yi.size(); ++j)
      if (a.get(yi[i], yi[j])) d[i] |= bit(j);
  }

  auto mul = [](const std::vector<Mask>& l, const std::vector<Mask>& r, int rcols) {
    std::vector<Mask> out(l.size(), 0);
    for (int i = 0; i < (int)l.size(); ++i)
      for (int t = 0; t < (int)r.size(); ++t)
        if (has_bit(l[i], t)) out[i] ^= r[t];
    (void)rcols;
    return out;
  };

  auto inv_b = mul(*inv, b, (int)yi.size());      // a^-1 b
  auto c_inv = mul(c, *inv, k);                   // c a^-1
  auto c_inv_b = mul(c_inv, b, (int)yi.size());   // c a^-1 b

  std::vector<Mask> rows(n, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      if (has_bit((*inv)[i], j)) rows[xi[i]] |= bit(xi[j]);
    for (int j = 0; j < (int)yi.size(); ++j)
      if (has_bit(inv_b[i], j)) rows[xi[i]] |= bit(yi[j]);
  }
  for (int i = 0; i < (int)yi.size(); ++i) {
    for (int j = 0; j < k; ++j)
      if (has_bit(c_inv[i], j)) rows[yi[i]] |= bit(xi[j]);
    Mask drow = d[i] ^ c_inv_b[i];
    for (int j = 0; j < (int)yi.size(); ++j)
      if (has_bit(drow, j)) rows[yi[i]] |= bit(yi[j]);
  }
  return Gf2Matrix(a.row_index.labels, a.col_index.labels, rows);
}

inline Gf2Matrix pivot(const Gf2Matrix& a, const std::vector<std::string>& x) {
  return pivot(a, label_set_mask(a, x));
}

// F(A) = family of X with A[X] nonsingular; only usable at small |V|.
inline std::vector<Mask> nonsingular_principal_family(const Gf2Matrix& a) {
  int n = a.n_cols();
  if (n > 20) throw ResourceError("principal family scan beyond 2^20 subsets");
  std::vector<Mask> fam;
  for (Mask x = 0; x < (Mask{1} << n); ++x)
    if (principal_nonsingular(a, x)) fam.push_back(x);
  return fam;
}

}  // namespace dgm
