#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "freeiso/words.hpp"

namespace freeiso {

using Integer = boost::multiprecision::cpp_int;

// <g_1, ..., g_m | r_1, ..., r_s>. Relators are stored cyclically reduced and
// relators that reduce to the identity are dropped.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generator_names,
               std::vector<Word> relators);

  // <x_1, ..., x_n | > with default_free_names(n).
  static Presentation free(std::size_t rank);

  std::size_t num_generators() const { return names_.size(); }
  std::size_t num_relators() const { return relators_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<Word>& relators() const { return relators_; }
  const Word& relator(std::size_t j) const { return relators_.at(j); }
  bool is_free() const { return relators_.empty(); }

  bool operator==(const Presentation&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<Word> relators_;
};

// x, y, z for rank <= 3, otherwise x1, ..., xn.
std::vector<std::string> default_free_names(std::size_t rank);

// Dense row-major integer matrix.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const IntegerMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);

// Row j holds the exponent sums of relator j.
IntegerMatrix relator_matrix(const Presentation& p);

// U * A * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
struct SmithForm {
  IntegerMatrix D;
  IntegerMatrix U;
  IntegerMatrix V;

  // The min(rows, cols) diagonal entries of D.
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntegerMatrix& a);

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // each >= 2, divisibility chain

  bool operator==(const AbelianInvariants&) const = default;
  std::string to_string() const;
};

AbelianInvariants abelian_invariants(const Presentation& p);

struct FilterResult {
  bool pass = false;
  std::string reason;  // empty on pass
  AbelianInvariants invariants;
};

// Fails exactly when the abelianization of p is not Z^n.
FilterResult free_rank_filter(const Presentation& p, std::size_t n);

// The row lattice of the relator matrix, for membership queries of exponent
// vectors.
class RelatorLattice {
 public:
  explicit RelatorLattice(const Presentation& p);

  bool contains(const std::vector<Integer>& v) const;
  bool contains(const Word& w) const;
  std::size_t rank() const { return rank_; }

 private:
  std::size_t m_ = 0;
  SmithForm snf_;
  std::size_t rank_ = 0;  // number of nonzero diagonal entries
};

std::vector<Integer> to_integers(const std::vector<long long>& v);

}  // namespace freeiso
