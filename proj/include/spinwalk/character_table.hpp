#pragma once

// Numeric character table of the double cover: class-sum structure-constant
// matrices commute, so the common eigenvectors of a random real combination
// give the character ratios (Dixon–Burnside); dimensions follow from row
// orthogonality.  Spin rows are flagged by the sign of the central element
// and matched to (lambda, gamma) labels by dimension plus restriction
// multiplicities against the level below.  On top of the table sit the
// Jucys–Murphy trace identity check and the uniform-ensemble character sum.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spinwalk/branching.hpp"
#include "spinwalk/group_algebra.hpp"
#include "spinwalk/rng.hpp"
#include "spinwalk/transition_measure.hpp"
#include "spinwalk/twisted_group.hpp"

namespace spinwalk {

struct CharacterTable {
  int n = 0;
  TwistedGroup group;
  TwistedGroup::Classes classes;
  int id_class = 0;
  int z_class = 0;
  std::vector<std::vector<std::complex<double>>> rows;  // row x class
  std::vector<double> dim;                              // integral, stored exact-rounded
  std::vector<bool> spin;
  std::vector<NazarovLabel> labels;  // spin_vertices(n)
  std::vector<int> label_row;        // label index -> row index

  explicit CharacterTable(TwistedGroup g) : group(std::move(g)) {}

  std::complex<double> value(int row, const TElem& x) const {
    return rows[row][classes.class_of[group.index(x)]];
  }
  std::complex<double> value_for_label(int label_idx, const TElem& x) const {
    return value(label_row[label_idx], x);
  }
};

namespace detail {

inline CharacterTable character_table_level(int n, const CharacterTable* prev) {
  CharacterTable T{TwistedGroup(n)};
  T.n = n;
  T.classes = T.group.conjugacy_classes();
  const int r = static_cast<int>(T.classes.rep.size());
  const int order = T.group.order();
  T.id_class = T.classes.class_of[T.group.index(T.group.identity())];
  T.z_class = T.classes.class_of[T.group.index(T.group.z())];

  // members per class and inverse elements
  std::vector<std::vector<std::size_t>> members(r);
  for (std::size_t idx = 0; idx < T.classes.class_of.size(); ++idx)
    members[T.classes.class_of[idx]].push_back(idx);

  // structure constants: (M_i)_{jk} = #{(x,y) in C_i x C_j : xy = rep_k}
  std::vector<Eigen::MatrixXd> M(r, Eigen::MatrixXd::Zero(r, r));
  for (int i = 0; i < r; ++i)
    for (const std::size_t xi : members[i]) {
      const TElem xinv = T.group.inverse(T.group.element(xi));
      for (int k = 0; k < r; ++k) {
        const TElem y = T.group.multiply(xinv, T.group.element(T.classes.rep[k]));
        M[i](T.classes.class_of[T.group.index(y)], k) += 1.0;
      }
    }

  // random combination; retry until every eigenvector is a clean common
  // eigenvector of all class matrices
  Rng rng(0xC4A11E5u + static_cast<std::uint64_t>(n));
  std::vector<Eigen::VectorXcd> us;
  for (int attempt = 0; attempt < 64 && us.empty(); ++attempt) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(r, r);
    for (int i = 0; i < r; ++i) A += (rng.uniform() * 2.0 - 1.0) * M[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A.cast<std::complex<double>>());
    if (es.info() != Eigen::Success) continue;
    std::vector<Eigen::VectorXcd> cand;
    bool ok = true;
    for (int m = 0; m < r && ok; ++m) {
      Eigen::VectorXcd v = es.eigenvectors().col(m);
      if (std::abs(v[T.id_class]) < 1e-10 * v.norm()) {
        ok = false;
        break;
      }
      v /= v[T.id_class];
      for (int i = 0; i < r && ok; ++i) {
        const Eigen::VectorXcd w = M[i].cast<std::complex<double>>() * v;
        const std::complex<double> omega = w[T.id_class];
        if ((w - omega * v).lpNorm<Eigen::Infinity>() >
            1e-9 * std::max(1.0, std::abs(omega) * v.lpNorm<Eigen::Infinity>()))
          ok = false;
      }
      cand.push_back(std::move(v));
    }
    if (ok) us = std::move(cand);
  }
  if (us.empty())
    throw std::runtime_error("character table: eigenvector separation failed");

  // dimensions and character values from the normalized eigenvectors
  struct Row {
    double dim;
    bool spin;
    std::vector<std::complex<double>> vals;
  };
  std::vector<Row> raw;
  for (const auto& u : us) {
    double s = 0;
    for (int k = 0; k < r; ++k) s += std::norm(u[k]) / T.classes.size[k];
    const double d_real = std::sqrt(order / s);
    const double d = std::round(d_real);
    if (std::abs(d_real - d) > 1e-6)
      throw std::runtime_error("character table: non-integral dimension");
    Row row;
    row.dim = d;
    row.vals.resize(r);
    for (int k = 0; k < r; ++k)
      row.vals[k] = d * u[k] / static_cast<double>(T.classes.size[k]);
    const double zratio = row.vals[T.z_class].real() / d;
    if (std::abs(row.vals[T.z_class].imag()) > 1e-9 * d ||
        std::abs(std::abs(zratio) - 1.0) > 1e-9)
      throw std::runtime_error("character table: central element not +-1");
    row.spin = zratio < 0;
    raw.push_back(std::move(row));
  }

  // deterministic order: ordinary rows first, then by descending dimension,
  // then by value tuple
  std::sort(raw.begin(), raw.end(), [](const Row& a, const Row& b) {
    if (a.spin != b.spin) return !a.spin;
    if (a.dim != b.dim) return a.dim > b.dim;
    for (std::size_t k = 0; k < a.vals.size(); ++k) {
      const double ar = std::round(a.vals[k].real() * 1e6) / 1e6,
                   br = std::round(b.vals[k].real() * 1e6) / 1e6;
      if (ar != br) return ar > br;
      const double ai = std::round(a.vals[k].imag() * 1e6) / 1e6,
                   bi = std::round(b.vals[k].imag() * 1e6) / 1e6;
      if (ai != bi) return ai > bi;
    }
    return false;
  });
  double dimsq = 0;
  for (auto& row : raw) {
    dimsq += row.dim * row.dim;
    T.dim.push_back(row.dim);
    T.spin.push_back(row.spin);
    T.rows.push_back(std::move(row.vals));
  }
  if (std::abs(dimsq - order) > 1e-6)
    throw std::runtime_error("character table: dimension sum mismatch");

  // orthogonality of rows
  for (std::size_t a = 0; a < T.rows.size(); ++a)
    for (std::size_t b = a; b < T.rows.size(); ++b) {
      std::complex<double> ip = 0;
      for (int k = 0; k < r; ++k)
        ip += static_cast<double>(T.classes.size[k]) * T.rows[a][k] *
              std::conj(T.rows[b][k]);
      const double want = a == b ? order : 0.0;
      if (std::abs(ip - want) > 1e-7 * order)
        throw std::runtime_error("character table: orthogonality failure");
    }

  // match spin rows to labels: by dimension at the base level, and by
  // restriction multiplicities against the previous level's matched rows
  T.labels = spin_vertices(n);
  T.label_row.assign(T.labels.size(), -1);
  std::vector<bool> used(T.rows.size(), false);
  for (std::size_t li = 0; li < T.labels.size(); ++li) {
    const double want_dim = dim_spin(T.labels[li]).get_d();
    for (std::size_t m = 0; m < T.rows.size(); ++m) {
      if (used[m] || !T.spin[m] || T.dim[m] != want_dim) continue;
      bool match = true;
      if (prev != nullptr) {
        // numeric restriction multiplicities onto the previous level
        for (std::size_t pj = 0; pj < prev->labels.size() && match; ++pj) {
          const int prow = prev->label_row[pj];
          std::complex<double> ip = 0;
          for (std::size_t pk = 0; pk < prev->classes.rep.size(); ++pk) {
            const TElem rep = prev->group.element(prev->classes.rep[pk]);
            const TElem emb = T.group.embed_from(prev->group, rep);
            ip += static_cast<double>(prev->classes.size[pk]) *
                  T.value(static_cast<int>(m), emb) * std::conj(prev->rows[prow][pk]);
          }
          ip /= static_cast<double>(prev->group.order());
          const double mult = std::round(ip.real());
          if (std::abs(ip.real() - mult) > 1e-6 || std::abs(ip.imag()) > 1e-6)
            throw std::runtime_error("character table: non-integral restriction");
          if (static_cast<int>(mult) !=
              branching_multiplicity(T.labels[li], prev->labels[pj]))
            match = false;
        }
      }
      if (match) {
        T.label_row[li] = static_cast<int>(m);
        used[m] = true;
        break;
      }
    }
    if (T.label_row[li] < 0)
      throw std::runtime_error("character table: spin label unmatched");
  }
  return T;
}

}  // namespace detail

// Tables for levels 1..n; index [m-1] is level m.
inline std::vector<CharacterTable> character_tables_up_to(int n) {
  std::vector<CharacterTable> tabs;
  for (int m = 1; m <= n; ++m)
    tabs.push_back(detail::character_table_level(m, tabs.empty() ? nullptr : &tabs.back()));
  return tabs;
}

inline CharacterTable character_table(int n) {
  auto tabs = character_tables_up_to(n);
  return std::move(tabs.back());
}

// Two-pipeline check of the Jucys–Murphy trace identity at level n, moment
// order 2k: the character side evaluates chi(E_n J^{2k})/dim through class
// sums and the numeric table; the measure side is the transition-measure
// moment sum over addable corners.
struct TraceCheckRow {
  NazarovLabel label;
  double lhs = 0, rhs = 0, dev = 0;
};
struct TraceCheck {
  int n = 0, k = 0;
  std::vector<TraceCheckRow> rows;
  double max_dev = 0;
};

inline TraceCheck jm_trace_check(int n, int k, const CharacterTable& table_n) {
  if (table_n.n != n) throw std::invalid_argument("jm_trace_check: table level mismatch");
  TraceCheck out;
  out.n = n;
  out.k = k;
  const TwistedGroup big(n + 1);
  const AlgebraElement J = jm(big, n + 1);
  const AlgebraElement Jpow = algebra_power(J, 2 * k);
  const AlgebraElement E = e_tilde(Jpow, table_n.group);
  const std::vector<Rat> alpha = center_expand(E, table_n.classes);
  for (std::size_t li = 0; li < table_n.labels.size(); ++li) {
    TraceCheckRow row;
    row.label = table_n.labels[li];
    const int m = table_n.label_row[li];
    std::complex<double> lhs = 0;
    for (std::size_t c = 0; c < alpha.size(); ++c)
      if (alpha[c] != 0)
        lhs += alpha[c].get_d() * static_cast<double>(table_n.classes.size[c]) *
               table_n.rows[m][c];
    lhs /= table_n.dim[m];
    if (std::abs(lhs.imag()) > 1e-9)
      throw std::logic_error("jm_trace_check: non-real character side");
    row.lhs = lhs.real();
    row.rhs = jm_moment_rhs(row.label.lambda, k).get_d();
    row.dev = std::abs(row.lhs - row.rhs);
    out.max_dev = std::max(out.max_dev, row.dev);
    out.rows.push_back(row);
  }
  return out;
}

inline TraceCheck jm_trace_check(int n, int k) {
  return jm_trace_check(n, k, character_table(n));
}

// Average over strict partitions of the normalized spin character at an odd
// cycle, one sign per partition: the finite-size quantity whose n -> oo
// scaling limit the Bernoulli-number series describes.
inline double uniform_ensemble_sum(int n, int k, const CharacterTable& table_n) {
  if (k < 2 || 2 * k - 1 > n)
    throw std::invalid_argument("uniform_ensemble_sum: need k >= 2, 2k-1 <= n");
  std::vector<int> letters(2 * k - 1);
  for (int i = 0; i < 2 * k - 1; ++i) letters[i] = i + 1;
  const TElem c = cycle(table_n.group, letters);
  std::complex<double> sum = 0;
  int count = 0;
  for (std::size_t li = 0; li < table_n.labels.size(); ++li) {
    if (table_n.labels[li].gamma != +1) continue;  // one sign per partition
    const int m = table_n.label_row[li];
    sum += table_n.value(m, c) / table_n.dim[m];
    ++count;
  }
  if (std::abs(sum.imag()) > 1e-9)
    throw std::logic_error("uniform_ensemble_sum: non-real value");
  return sum.real() / count;
}

}  // namespace spinwalk
