#include "leflab/exterior.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace leflab {

namespace {

// Binomial table big enough for dim <= 24.
constexpr int kMaxN = kMaxDim + 1;
const long long* binomials() {
  static long long table[kMaxN * kMaxN];
  static bool ready = [] {
    for (int n = 0; n < kMaxN; ++n) {
      table[n * kMaxN + 0] = 1;
      for (int k = 1; k <= n; ++k) {
        table[n * kMaxN + k] =
            table[(n - 1) * kMaxN + k - 1] +
            (k <= n - 1 ? table[(n - 1) * kMaxN + k] : 0);
      }
      for (int k = n + 1; k < kMaxN; ++k) table[n * kMaxN + k] = 0;
    }
    return true;
  }();
  (void)ready;
  return table;
}

long long choose(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return binomials()[n * kMaxN + k];
}

void check_index(int dim, const MultiIndex& idx) {
  int prev = 0;
  for (int i : idx) {
    if (i < 1 || i > dim) throw std::invalid_argument("generator index out of range");
    if (i <= prev) throw std::invalid_argument("multi-index not strictly increasing");
    prev = i;
  }
}

}  // namespace

Form Form::monomial(int dim, MultiIndex idx, Rational c) {
  check_index(dim, idx);
  Form f{dim, static_cast<int>(idx.size()), {}};
  if (c != 0) f.coeff.emplace(std::move(idx), std::move(c));
  return f;
}

Form Form::constant(int dim, Rational c) { return monomial(dim, {}, std::move(c)); }

bool Form::operator==(const Form& other) const {
  if (dim != other.dim) return false;
  if (coeff.empty() && other.coeff.empty()) return true;  // zero is degree-agnostic
  return degree == other.degree && coeff == other.coeff;
}

Form Form::operator+(const Form& other) const {
  if (dim != other.dim) throw std::invalid_argument("form dimension mismatch in +");
  if (other.is_zero()) return *this;
  if (is_zero()) return other;
  if (degree != other.degree) throw std::invalid_argument("form degree mismatch in +");
  Form out = *this;
  for (const auto& [idx, c] : other.coeff) out.add_term(idx, c);
  return out;
}

Form Form::operator-(const Form& other) const {
  if (dim != other.dim) throw std::invalid_argument("form dimension mismatch in -");
  if (other.is_zero()) return *this;
  if (is_zero()) return other.scaled(Rational(-1));
  if (degree != other.degree) throw std::invalid_argument("form degree mismatch in -");
  Form out = *this;
  for (const auto& [idx, c] : other.coeff) out.add_term(idx, -c);
  return out;
}

Form Form::scaled(const Rational& c) const {
  Form out{dim, degree, {}};
  if (c == 0) return out;
  for (const auto& [idx, v] : coeff) out.coeff.emplace(idx, c * v);
  return out;
}

void Form::add_term(const MultiIndex& idx, const Rational& c) {
  if (c == 0) return;
  auto it = coeff.find(idx);
  if (it == coeff.end()) {
    coeff.emplace(idx, c);
  } else {
    it->second += c;
    if (it->second == 0) coeff.erase(it);
  }
}

std::string to_string(const Form& f) {
  if (f.coeff.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, c] : f.coeff) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    std::string monomial;
    if (idx.empty()) {
      monomial = "1";
    } else {
      bool wide = f.dim > 9;
      monomial = "e";
      for (std::size_t s = 0; s < idx.size(); ++s) {
        if (wide && s > 0) monomial += ".";
        monomial += std::to_string(idx[s]);
      }
    }
    if (mag == 1 && !idx.empty()) {
      out << monomial;
    } else if (idx.empty()) {
      out << to_string(mag);
    } else {
      out << to_string(mag) << " " << monomial;
    }
  }
  return out.str();
}

std::optional<std::pair<MultiIndex, int>> sort_index(const MultiIndex& unsorted) {
  MultiIndex idx = unsorted;
  int sign = 1;
  // Insertion sort with transposition counting; fine at these sizes.
  for (std::size_t i = 1; i < idx.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && idx[j - 1] > idx[j]) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
      --j;
    }
    if (j > 0 && idx[j - 1] == idx[j]) return std::nullopt;
  }
  return std::make_pair(std::move(idx), sign);
}

Form wedge(const Form& a, const Form& b) {
  if (a.dim != b.dim) throw std::invalid_argument("wedge dimension mismatch");
  Form out = Form::zero(a.dim, a.degree + b.degree);
  if (out.degree > a.dim) return out;
  for (const auto& [ia, ca] : a.coeff) {
    for (const auto& [ib, cb] : b.coeff) {
      MultiIndex merged;
      merged.reserve(ia.size() + ib.size());
      // Sorted merge, counting how many elements of ia each element of ib
      // jumps over.
      std::size_t p = 0, q = 0;
      int transpositions = 0;
      bool repeated = false;
      while (p < ia.size() || q < ib.size()) {
        if (q == ib.size() || (p < ia.size() && ia[p] < ib[q])) {
          merged.push_back(ia[p++]);
        } else if (p < ia.size() && ia[p] == ib[q]) {
          repeated = true;
          break;
        } else {
          merged.push_back(ib[q++]);
          transpositions += static_cast<int>(ia.size() - p);
        }
      }
      if (repeated) continue;
      const Rational c = (transpositions % 2 == 0) ? ca * cb : Rational(-(ca * cb));
      out.add_term(merged, c);
    }
  }
  return out;
}

Form interior(const VectorField& v, const Form& omega) {
  if (static_cast<int>(v.size()) != omega.dim) {
    throw std::invalid_argument("interior dimension mismatch");
  }
  Form out = Form::zero(omega.dim, omega.degree - 1);
  if (omega.degree == 0) return Form::zero(omega.dim, 0);
  for (const auto& [idx, c] : omega.coeff) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const Rational& comp = v[idx[s] - 1];
      if (comp == 0) continue;
      MultiIndex rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t t = 0; t < idx.size(); ++t) {
        if (t != s) rest.push_back(idx[t]);
      }
      const Rational term = (s % 2 == 0) ? c * comp : Rational(-(c * comp));
      out.add_term(rest, term);
    }
  }
  return out;
}

Form insert_endo(const Endomorphism& psi, const Form& omega) {
  const int dim = omega.dim;
  if (static_cast<int>(psi.size()) != dim) {
    throw std::invalid_argument("insert_endo dimension mismatch");
  }
  for (const auto& row : psi) {
    if (static_cast<int>(row.size()) != dim) {
      throw std::invalid_argument("insert_endo ragged endomorphism");
    }
  }
  Form out = Form::zero(dim, omega.degree);
  for (const auto& [idx, c] : omega.coeff) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      // alpha∘psi on the slot-s generator: row idx[s] of psi.
      const auto& row = psi[idx[s] - 1];
      for (int j = 1; j <= dim; ++j) {
        const Rational& a = row[j - 1];
        if (a == 0) continue;
        MultiIndex replaced = idx;
        replaced[s] = j;
        auto sorted = sort_index(replaced);
        if (!sorted) continue;
        const Rational term = c * a;
        out.add_term(sorted->first, sorted->second > 0 ? term : Rational(-term));
      }
    }
  }
  return out;
}

int space_dim(int dim, int p) { return static_cast<int>(choose(dim, p)); }

std::vector<MultiIndex> basis(int dim, int p) {
  std::vector<MultiIndex> out;
  if (p < 0 || p > dim) return out;
  MultiIndex idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i + 1;
  while (true) {
    out.push_back(idx);
    int s = p - 1;
    while (s >= 0 && idx[s] == dim - (p - 1 - s)) --s;
    if (s < 0) break;
    ++idx[s];
    for (int t = s + 1; t < p; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

int index_rank(int dim, const MultiIndex& idx) {
  check_index(dim, idx);
  const int p = static_cast<int>(idx.size());
  long long rank = 0;
  int prev = 0;
  for (int s = 0; s < p; ++s) {
    for (int t = prev + 1; t < idx[s]; ++t) rank += choose(dim - t, p - 1 - s);
    prev = idx[s];
  }
  return static_cast<int>(rank);
}

MultiIndex index_unrank(int dim, int p, int rank) {
  MultiIndex idx;
  idx.reserve(p);
  int t = 1;
  long long r = rank;
  for (int s = 0; s < p; ++s) {
    while (true) {
      const long long block = choose(dim - t, p - 1 - s);
      if (r < block) break;
      r -= block;
      ++t;
    }
    idx.push_back(t);
    ++t;
  }
  if (r != 0) throw std::out_of_range("monomial rank out of range");
  return idx;
}

SparseVec form_to_vec(const Form& f) {
  SparseVec out;
  out.reserve(f.coeff.size());
  for (const auto& [idx, c] : f.coeff) out.emplace_back(index_rank(f.dim, idx), c);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Form vec_to_form(int dim, int degree, const SparseVec& v) {
  Form out = Form::zero(dim, degree);
  for (const auto& [rank, c] : v) out.coeff.emplace(index_unrank(dim, degree, rank), c);
  return out;
}

Mat as_matrix(const std::function<Form(const Form&)>& op, int dim, int p, int shift) {
  const int target = p + shift;
  const int rows = space_dim(dim, target);
  const int cols = space_dim(dim, p);
  std::vector<SparseVec> columns;
  columns.reserve(cols);
  for (const MultiIndex& idx : basis(dim, p)) {
    const Form image = op(Form::monomial(dim, idx));
    if (!image.is_zero() && image.degree != target) {
      throw std::logic_error("as_matrix: operator changed degree unexpectedly");
    }
    columns.push_back(rows == 0 ? SparseVec{} : form_to_vec(image));
  }
  return Mat::from_cols(rows, columns);
}

}  // namespace leflab
