#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rrf/core_model.hpp"
#include "rrf/io/json_text.hpp"

namespace rrf::io {

// Export of the Schur-complement SDP whose optimal value is the squared
// epigraph distance f*. Standard SDPA form:
//
//   minimize c^T x   subject to   sum_i x_i F_i - F_0 >= 0   (block diagonal)
//
// Variables, 1-based: z_1..z_n, then s, then t, then lambda_1..lambda_m.
// Blocks: the Schur block [[t I_n, 0, z], [0, t, s], [z^T, s, 1]], a
// dense block for curved bases (ball arrow or smat(lambda)), and one diagonal
// block carrying the linear rows (base rows, z = A^T lambda as a pair of
// inequalities per coordinate, s + b^T lambda >= 0).

struct SdpaEntry {
  int matrix = 0;  // 0 is F_0
  int block = 1;   // 1-based
  int row = 1;     // 1-based, row <= col
  int col = 1;
  double value = 0.0;
};

struct SdpaProblem {
  int m_dim = 0;
  std::vector<int> block_sizes;  // negative for diagonal blocks
  Vector c;
  std::vector<SdpaEntry> entries;
};

namespace detail {

class SdpaBuilder {
 public:
  explicit SdpaBuilder(int m_dim) : problem_{m_dim, {}, Vector::Zero(m_dim), {}} {}

  int add_block(int size) {
    problem_.block_sizes.push_back(size);
    return static_cast<int>(problem_.block_sizes.size());
  }
  void entry(int matrix, int block, int i, int j, double value) {
    if (value == 0.0) return;
    if (i > j) std::swap(i, j);
    problem_.entries.push_back({matrix, block, i, j, value});
  }
  Vector& c() { return problem_.c; }
  SdpaProblem take() { return std::move(problem_); }

 private:
  SdpaProblem problem_;
};

}  // namespace detail

/// Builds the block structure for the given base. Supported: simplex,
/// SOC slice, spectraplex.
inline SdpaProblem build_sdpa(const NominalProblem& problem, const CompactBaseSpec& base) {
  const NominalProblem p = validate_problem(problem);
  if (std::holds_alternative<SvmProduct>(base.kind)) {
    throw Error(ErrorCode::UnsupportedBase, "SDPA export does not cover the SVM product base");
  }
  if (base.dim() != p.m()) throw Error(ErrorCode::DimensionMismatch, "base dimension does not match m");
  const int n = p.n();
  const int m = p.m();
  const double mu = base.scale;
  const int var_s = n + 1;
  const int var_t = n + 2;
  auto var_z = [](int j) { return j + 1; };
  auto var_l = [n](int i) { return n + 3 + i; };

  detail::SdpaBuilder b(n + 2 + m);
  b.c()(var_t - 1) = 1.0;

  const int schur = b.add_block(n + 2);
  for (int j = 1; j <= n + 1; ++j) b.entry(var_t, schur, j, j, 1.0);
  for (int j = 0; j < n; ++j) b.entry(var_z(j), schur, j + 1, n + 2, 1.0);
  b.entry(var_s, schur, n + 1, n + 2, 1.0);
  b.entry(0, schur, n + 2, n + 2, -1.0);

  int dense = 0;
  if (const auto* soc = std::get_if<SocSlice>(&base.kind)) {
    // [[mu I, u], [u^T, mu]] >= 0  <=>  ||u|| <= mu
    dense = b.add_block(soc->m);
    for (int i = 1; i <= soc->m; ++i) b.entry(0, dense, i, i, -mu);
    for (int i = 0; i < soc->m - 1; ++i) b.entry(var_l(i), dense, i + 1, soc->m, 1.0);
  } else if (const auto* spx = std::get_if<Spectraplex>(&base.kind)) {
    dense = b.add_block(spx->q);
    for (int i = 0; i < spx->q; ++i) {
      for (int j = i; j < spx->q; ++j) {
        const int k = svec_index(spx->q, i, j);
        b.entry(var_l(k), dense, i + 1, j + 1, i == j ? 1.0 : 1.0 / std::sqrt(2.0));
      }
    }
  }

  // Diagonal rows, each of the form sum_i coef_i x_i - const >= 0.
  struct Row {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;  // F_0 diagonal entry
  };
  std::vector<Row> rows;
  auto normalization_pair = [&rows](std::vector<std::pair<int, double>> terms, double target) {
    rows.push_back({terms, target});
    for (auto& t : terms) t.second = -t.second;
    rows.push_back({terms, -target});
  };
  if (std::holds_alternative<Simplex>(base.kind)) {
    std::vector<std::pair<int, double>> sum;
    for (int i = 0; i < m; ++i) {
      rows.push_back({{{var_l(i), 1.0}}, 0.0});
      sum.emplace_back(var_l(i), 1.0);
    }
    normalization_pair(sum, mu);
  } else if (std::holds_alternative<SocSlice>(base.kind)) {
    normalization_pair({{var_l(m - 1), 1.0}}, mu);
  } else {
    const int q = std::get<Spectraplex>(base.kind).q;
    std::vector<std::pair<int, double>> trace;
    for (int i = 0; i < q; ++i) trace.emplace_back(var_l(svec_index(q, i, i)), 1.0);
    normalization_pair(trace, mu);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> terms{{var_z(j), 1.0}};
    for (int i = 0; i < m; ++i) terms.emplace_back(var_l(i), -p.a_bar(i, j));
    normalization_pair(terms, 0.0);
  }
  {
    std::vector<std::pair<int, double>> terms{{var_s, 1.0}};
    for (int i = 0; i < m; ++i) terms.emplace_back(var_l(i), p.b_bar(i));
    rows.push_back({terms, 0.0});
  }

  const int diag = b.add_block(-static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int idx = static_cast<int>(r) + 1;
    for (const auto& [var, coef] : rows[r].terms) b.entry(var, diag, idx, idx, coef);
    b.entry(0, diag, idx, idx, rows[r].constant);
  }
  (void)dense;
  return b.take();
}

inline std::string write_sdpa(const SdpaProblem& prob, int n, int m) {
  std::ostringstream out;
  out << "\"squared distance to the epigraphical set (Schur-complement SDP)\n";
  out << "* variables: x_1..x_" << n << " = z, x_" << n + 1 << " = s, x_" << n + 2 << " = t, x_" << n + 3
      << "..x_" << n + 2 + m << " = lambda\n";
  out << "* optimal value = squared distance; take the square root for the distance\n";
  out << prob.m_dim << "\n";
  out << prob.block_sizes.size() << "\n";
  for (std::size_t i = 0; i < prob.block_sizes.size(); ++i) out << (i ? " " : "") << prob.block_sizes[i];
  out << "\n";
  for (Eigen::Index i = 0; i < prob.c.size(); ++i) out << (i ? " " : "") << format_number(prob.c(i));
  out << "\n";
  for (const auto& e : prob.entries) {
    out << e.matrix << " " << e.block << " " << e.row << " " << e.col << " " << format_number(e.value) << "\n";
  }
  return out.str();
}

inline std::string export_sdpa(const NominalProblem& p, const CompactBaseSpec& base) {
  return write_sdpa(build_sdpa(p, base), p.n(), p.m());
}

inline std::string export_sdpa(const NominalProblem& p) { return export_sdpa(p, natural_base(p.cone)); }

/// Minimal reader for the sparse SDPA layout written above.
inline SdpaProblem read_sdpa(std::string_view text) {
  std::string cleaned;
  {
    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '"' || line[first] == '*') continue;
      for (char& ch : line)
        if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
      cleaned += line + "\n";
    }
  }
  std::istringstream in(cleaned);
  SdpaProblem out;
  int n_block = 0;
  if (!(in >> out.m_dim >> n_block) || out.m_dim < 1 || n_block < 1) {
    throw Error(ErrorCode::SchemaError, "SDPA header must give mDIM and nBLOCK");
  }
  out.block_sizes.resize(static_cast<std::size_t>(n_block));
  for (auto& s : out.block_sizes)
    if (!(in >> s) || s == 0) throw Error(ErrorCode::SchemaError, "bad SDPA block structure");
  out.c.resize(out.m_dim);
  for (int i = 0; i < out.m_dim; ++i)
    if (!(in >> out.c(i))) throw Error(ErrorCode::SchemaError, "SDPA objective vector is short");
  SdpaEntry e;
  while (in >> e.matrix >> e.block >> e.row >> e.col >> e.value) {
    if (e.matrix < 0 || e.matrix > out.m_dim || e.block < 1 || e.block > n_block) {
      throw Error(ErrorCode::SchemaError, "SDPA entry refers to a missing matrix or block");
    }
    const int size = std::abs(out.block_sizes[static_cast<std::size_t>(e.block - 1)]);
    if (e.row < 1 || e.col < 1 || e.row > size || e.col > size) {
      throw Error(ErrorCode::SchemaError, "SDPA entry index outside its block");
    }
    out.entries.push_back(e);
  }
  if (!in.eof()) throw Error(ErrorCode::SchemaError, "trailing garbage in SDPA entries");
  return out;
}

/// The block matrices sum_i x_i F_i - F_0 at a point x.
inline std::vector<Matrix> sdpa_slack(const SdpaProblem& prob, const Vector& x) {
  if (x.size() != prob.m_dim) throw Error(ErrorCode::DimensionMismatch, "point has the wrong length");
  std::vector<Matrix> blocks;
  for (int size : prob.block_sizes) blocks.push_back(Matrix::Zero(std::abs(size), std::abs(size)));
  for (const auto& e : prob.entries) {
    const double w = e.matrix == 0 ? -e.value : e.value * x(e.matrix - 1);
    Matrix& blk = blocks[static_cast<std::size_t>(e.block - 1)];
    blk(e.row - 1, e.col - 1) += w;
    if (e.row != e.col) blk(e.col - 1, e.row - 1) += w;
  }
  return blocks;
}

/// SDP point (z, s, t, lambda) induced by a base point lambda:
/// z = A^T lambda, s = max(-b^T lambda, 0), t = ||(z, s)||^2.
inline Vector sdpa_point(const NominalProblem& p, const Vector& lambda) {
  const int n = p.n();
  Vector x(n + 2 + p.m());
  const Vector z = p.a_bar.transpose() * lambda;
  const double s = std::max(-p.b_bar.dot(lambda), 0.0);
  x.head(n) = z;
  x(n) = s;
  x(n + 1) = z.squaredNorm() + s * s;
  x.tail(p.m()) = lambda;
  return x;
}

}  // namespace rrf::io
