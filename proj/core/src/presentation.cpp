#include "freeiso/presentation.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "freeiso/error.hpp"

namespace freeiso {

Presentation::Presentation(std::vector<std::string> generator_names,
                           std::vector<Word> relators)
    : names_(std::move(generator_names)) {
  for (Word& r : relators) {
    check_rank(r, names_.size());
    Word core = cyclically_reduce(r).core;
    if (!core.is_identity()) {
      relators_.push_back(std::move(core));
    }
  }
}

Presentation Presentation::free(std::size_t rank) {
  return Presentation(default_free_names(rank), {});
}

std::vector<std::string> default_free_names(std::size_t rank) {
  std::vector<std::string> names;
  if (rank <= 3) {
    const char* small[] = {"x", "y", "z"};
    names.assign(small, small + rank);
    return names;
  }
  for (std::size_t i = 1; i <= rank; ++i) {
    names.push_back("x" + std::to_string(i));
  }
  return names;
}

IntegerMatrix::IntegerMatrix(
    std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw PreconditionError("IntegerMatrix: ragged initializer");
    }
    for (long long v : row) {
      data_.emplace_back(v);
    }
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = 1;
  }
  return m;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) {
    throw PreconditionError("matrix product: dimension mismatch");
  }
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  }
  return c;
}

IntegerMatrix relator_matrix(const Presentation& p) {
  IntegerMatrix a(p.num_relators(), p.num_generators());
  for (std::size_t j = 0; j < p.num_relators(); ++j) {
    auto sums = exponent_sums(p.relator(j), p.num_generators());
    for (std::size_t i = 0; i < sums.size(); ++i) {
      a.at(j, i) = sums[i];
    }
  }
  return a;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
    d.push_back(D.at(i, i));
  }
  return d;
}

namespace {

// Elementary operations applied simultaneously to D and the transform that
// records them (U for rows, V for columns).
struct SnfState {
  IntegerMatrix d;
  IntegerMatrix u;
  IntegerMatrix v;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(a, j), u.at(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
    for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, a), v.at(i, b));
  }
  // row[dst] -= q * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < d.cols(); ++j) d.at(dst, j) -= q * d.at(src, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(dst, j) -= q * u.at(src, j);
  }
  // col[dst] -= q * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < d.rows(); ++i) d.at(i, dst) -= q * d.at(i, src);
    for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, dst) -= q * v.at(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < d.cols(); ++j) d.at(r, j) = -d.at(r, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(r, j) = -u.at(r, j);
  }
};

Integer abs_of(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Truncating division; the remainder is smaller than the pivot in absolute value.
Integer quotient(const Integer& a, const Integer& b) { return a / b; }

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& a) {
  SnfState s{a, IntegerMatrix::identity(a.rows()),
             IntegerMatrix::identity(a.cols())};
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Pivot: smallest nonzero |entry| in the trailing block, ties row-major.
      std::size_t pr = rows;
      std::size_t pc = cols;
      Integer best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          const Integer& x = s.d.at(i, j);
          if (x != 0 && (pr == rows || abs_of(x) < best)) {
            best = abs_of(x);
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) {
        break;  // trailing block is zero
      }
      s.swap_rows(t, pr);
      s.swap_cols(t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s.d.at(i, t) != 0) {
          s.add_row(i, t, quotient(s.d.at(i, t), s.d.at(t, t)));
          dirty = dirty || s.d.at(i, t) != 0;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s.d.at(t, j) != 0) {
          s.add_col(j, t, quotient(s.d.at(t, j), s.d.at(t, t)));
          dirty = dirty || s.d.at(t, j) != 0;
        }
      }
      if (dirty) {
        continue;
      }
      // Row and column t are clear; enforce divisibility on the rest.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (s.d.at(i, j) % s.d.at(t, t) != 0) {
            s.add_row(t, i, Integer(-1));
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) {
        break;
      }
    }
    if (s.d.at(t, t) < 0) {
      s.negate_row(t);
    }
  }
  SmithForm out{std::move(s.d), std::move(s.u), std::move(s.v)};
#ifndef NDEBUG
  assert(out.U * a * out.V == out.D);
#endif
  return out;
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const Integer& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbelianInvariants abelian_invariants(const Presentation& p) {
  const std::size_t m = p.num_generators();
  AbelianInvariants inv;
  if (p.num_relators() == 0) {
    inv.free_rank = m;
    return inv;
  }
  SmithForm snf = smith_normal_form(relator_matrix(p));
  std::size_t nonzero = 0;
  for (const Integer& d : snf.diagonal()) {
    if (d != 0) {
      ++nonzero;
      if (d != 1) inv.torsion.push_back(d);
    }
  }
  inv.free_rank = m - nonzero;
  return inv;
}

FilterResult free_rank_filter(const Presentation& p, std::size_t n) {
  FilterResult r;
  r.invariants = abelian_invariants(p);
  if (!r.invariants.torsion.empty()) {
    r.reason = "torsion in abelianization: " + r.invariants.to_string();
  } else if (r.invariants.free_rank != n) {
    r.reason = "free rank " + std::to_string(r.invariants.free_rank)
               + " != " + std::to_string(n);
  }
  r.pass = r.reason.empty();
  return r;
}

RelatorLattice::RelatorLattice(const Presentation& p)
    : m_(p.num_generators()) {
  if (p.num_relators() > 0) {
    snf_ = smith_normal_form(relator_matrix(p));
    for (const Integer& d : snf_.diagonal()) {
      if (d != 0) ++rank_;
    }
  }
}

bool RelatorLattice::contains(const std::vector<Integer>& v) const {
  if (v.size() != m_) {
    throw RankMismatch("RelatorLattice: vector length mismatch");
  }
  if (rank_ == 0) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
  }
  // v = x*A  <=>  (v*V)_i is divisible by d_i (and zero past the rank).
  for (std::size_t j = 0; j < m_; ++j) {
    Integer c = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      c += v[i] * snf_.V.at(i, j);
    }
    if (j < rank_) {
      if (c % snf_.D.at(j, j) != 0) return false;
    } else if (c != 0) {
      return false;
    }
  }
  return true;
}

bool RelatorLattice::contains(const Word& w) const {
  return contains(to_integers(exponent_sums(w, m_)));
}

std::vector<Integer> to_integers(const std::vector<long long>& v) {
  return std::vector<Integer>(v.begin(), v.end());
}

}  // namespace freeiso
