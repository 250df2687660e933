#include "mub/sdp_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mub::sdpsolve {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string strip_punctuation(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
  }
  return s;
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '"' || line[first] == '*') continue;
    return true;
  }
  return false;
}

long long first_int(const std::string& line, const char* what) {
  std::istringstream is(strip_punctuation(line));
  long long v = 0;
  if (!(is >> v)) throw std::invalid_argument(std::string("SDPA: cannot read ") + what);
  return v;
}

}  // namespace

void write_sdpa(std::ostream& out, const SDPInstance& inst) {
  inst.validate();
  const std::size_t neq = inst.equalities.size();
  const std::size_t nblocks = inst.blocks.size() + (neq > 0 ? 1 : 0);
  out << "* mubcert SDP instance\n";
  out << "* objective_constant " << num(inst.c0) << "\n";
  out << inst.n << "\n" << nblocks << "\n";
  for (std::size_t k = 0; k < inst.blocks.size(); ++k) {
    out << (k ? " " : "") << inst.blocks[k].dim;
  }
  if (neq > 0) out << (inst.blocks.empty() ? "" : " ") << "-" << 2 * neq;
  out << "\n";
  for (std::size_t i = 0; i < inst.n; ++i) out << (i ? " " : "") << num(inst.c[i]);
  out << "\n";
  for (std::size_t k = 0; k < inst.blocks.size(); ++k) {
    for (const auto& e : inst.blocks[k].entries) {
      const double v = e.matrix == 0 ? -e.value : e.value;
      out << e.matrix << " " << k + 1 << " " << e.row + 1 << " " << e.col + 1 << " " << num(v)
          << "\n";
    }
  }
  if (neq > 0) {
    const std::size_t blk = inst.blocks.size() + 1;
    for (std::size_t t = 0; t < neq; ++t) {
      const auto& row = inst.equalities[t];
      for (int sign : {1, -1}) {
        const std::size_t pos = 2 * t + (sign > 0 ? 1 : 2);
        if (row.rhs != 0.0) {
          out << "0 " << blk << " " << pos << " " << pos << " " << num(sign * row.rhs) << "\n";
        }
        for (const auto& [var, v] : row.coeffs) {
          out << var + 1 << " " << blk << " " << pos << " " << pos << " " << num(sign * v)
              << "\n";
        }
      }
    }
  }
}

SDPInstance read_sdpa(std::istream& input) {
  SDPInstance inst;
  std::string line;
  std::ostringstream buffer;
  buffer << input.rdbuf();
  const std::string text = buffer.str();
  // Comments may carry the objective constant.
  std::istringstream in(text);
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] != '"' && line[first] != '*') break;
    std::istringstream is(line.substr(first + 1));
    std::string key;
    double value = 0;
    if (is >> key && key == "objective_constant" && is >> value) inst.c0 = value;
  }
  in.clear();
  in.seekg(0);

  if (!next_content_line(in, line)) throw std::invalid_argument("SDPA: missing m");
  const long long m = first_int(line, "m");
  if (!next_content_line(in, line)) throw std::invalid_argument("SDPA: missing nBlocks");
  const long long nblocks = first_int(line, "nBlocks");
  if (m < 0 || nblocks <= 0) throw std::invalid_argument("SDPA: bad header");
  if (!next_content_line(in, line)) throw std::invalid_argument("SDPA: missing block struct");
  std::vector<long long> sizes;
  {
    std::istringstream is(strip_punctuation(line));
    long long v;
    while (sizes.size() < static_cast<std::size_t>(nblocks) && is >> v) sizes.push_back(v);
    if (sizes.size() != static_cast<std::size_t>(nblocks)) {
      throw std::invalid_argument("SDPA: block struct too short");
    }
  }
  std::ostringstream rest;
  rest << in.rdbuf();
  std::istringstream tokens(strip_punctuation(rest.str()));
  inst.n = static_cast<std::size_t>(m);
  inst.c.resize(inst.n);
  for (auto& v : inst.c) {
    if (!(tokens >> v)) throw std::invalid_argument("SDPA: objective vector too short");
  }

  struct LpRow {
    std::map<std::size_t, double> coeffs;  // matrix index -> value (0 = F0)
  };
  std::vector<int> block_map(sizes.size(), -1);
  std::vector<std::vector<LpRow>> lp(sizes.size());
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (sizes[b] == 0) throw std::invalid_argument("SDPA: zero block size");
    if (sizes[b] > 0) {
      block_map[b] = static_cast<int>(inst.blocks.size());
      inst.blocks.push_back({static_cast<std::size_t>(sizes[b]), {}});
    } else {
      lp[b].resize(static_cast<std::size_t>(-sizes[b]));
    }
  }
  long long matno, blk, i, j;
  double v;
  while (tokens >> matno) {
    if (!(tokens >> blk >> i >> j >> v)) throw std::invalid_argument("SDPA: truncated entry");
    if (matno < 0 || matno > m || blk < 1 || blk > nblocks) {
      throw std::invalid_argument("SDPA: entry index out of range");
    }
    const auto b = static_cast<std::size_t>(blk - 1);
    const long long dim = std::abs(sizes[b]);
    if (i < 1 || j < 1 || i > dim || j > dim) {
      throw std::invalid_argument("SDPA: entry position out of range");
    }
    if (sizes[b] < 0) {
      if (i != j) throw std::invalid_argument("SDPA: off-diagonal entry in LP block");
      lp[b][static_cast<std::size_t>(i - 1)].coeffs[static_cast<std::size_t>(matno)] += v;
      continue;
    }
    auto r = static_cast<std::size_t>(i - 1), c = static_cast<std::size_t>(j - 1);
    if (r > c) std::swap(r, c);
    inst.blocks[static_cast<std::size_t>(block_map[b])].entries.push_back(
        {static_cast<std::size_t>(matno), r, c, matno == 0 ? -v : v});
  }
  if (!tokens.eof()) throw std::invalid_argument("SDPA: unreadable entry");

  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (sizes[b] > 0) continue;
    const auto& rows = lp[b];
    bool paired = rows.size() % 2 == 0;
    for (std::size_t t = 0; paired && 2 * t < rows.size(); ++t) {
      const auto& p = rows[2 * t].coeffs;
      const auto& q = rows[2 * t + 1].coeffs;
      if (p.size() != q.size()) {
        paired = false;
        break;
      }
      for (const auto& [k, val] : p) {
        const auto it = q.find(k);
        if (it == q.end() || it->second != -val) {
          paired = false;
          break;
        }
      }
    }
    if (paired) {
      for (std::size_t t = 0; 2 * t < rows.size(); ++t) {
        LinearRow row;
        for (const auto& [k, val] : rows[2 * t].coeffs) {
          if (k == 0) {
            row.rhs = val;
          } else {
            row.coeffs.emplace_back(k - 1, val);
          }
        }
        inst.equalities.push_back(std::move(row));
      }
    } else {
      // Genuine inequalities: keep them as a diagonal PSD block.
      AffineBlock diag{rows.size(), {}};
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [k, val] : rows[r].coeffs) {
          diag.entries.push_back({k, r, r, k == 0 ? -val : val});
        }
      }
      inst.blocks.push_back(std::move(diag));
    }
  }
  inst.validate();
  return inst;
}

nlohmann::json to_json(const SDPInstance& inst) {
  nlohmann::json j;
  j["format"] = "mubcert-sdp-instance";
  j["n"] = inst.n;
  j["c"] = inst.c;
  j["c0"] = inst.c0;
  auto eqs = nlohmann::json::array();
  for (const auto& row : inst.equalities) {
    auto coeffs = nlohmann::json::array();
    for (const auto& [var, v] : row.coeffs) coeffs.push_back({var, v});
    eqs.push_back({{"coeffs", coeffs}, {"rhs", row.rhs}});
  }
  j["equalities"] = eqs;
  auto blocks = nlohmann::json::array();
  for (const auto& b : inst.blocks) {
    auto entries = nlohmann::json::array();
    for (const auto& e : b.entries) entries.push_back({e.matrix, e.row, e.col, e.value});
    blocks.push_back({{"dim", b.dim}, {"entries", entries}});
  }
  j["blocks"] = blocks;
  return j;
}

SDPInstance instance_from_json(const nlohmann::json& j) {
  SDPInstance inst;
  try {
    inst.n = j.at("n").get<std::size_t>();
    inst.c = j.at("c").get<std::vector<double>>();
    inst.c0 = j.value("c0", 0.0);
    for (const auto& row : j.at("equalities")) {
      LinearRow r;
      for (const auto& cv : row.at("coeffs")) {
        r.coeffs.emplace_back(cv.at(0).get<std::size_t>(), cv.at(1).get<double>());
      }
      r.rhs = row.at("rhs").get<double>();
      inst.equalities.push_back(std::move(r));
    }
    for (const auto& b : j.at("blocks")) {
      AffineBlock blk;
      blk.dim = b.at("dim").get<std::size_t>();
      for (const auto& e : b.at("entries")) {
        blk.entries.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                               e.at(2).get<std::size_t>(), e.at(3).get<double>()});
      }
      inst.blocks.push_back(std::move(blk));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed SDP instance JSON: ") + e.what());
  }
  inst.validate();
  return inst;
}

nlohmann::json to_json(const SDPSolution& sol, bool include_dual) {
  nlohmann::json j;
  j["status"] = to_string(sol.status);
  j["message"] = sol.message;
  j["y"] = std::vector<double>(sol.y.data(), sol.y.data() + sol.y.size());
  j["primal_objective"] = sol.primal_objective;
  j["dual_objective"] = sol.dual_objective;
  j["gap"] = sol.gap;
  j["primal_infeasibility"] = sol.primal_infeasibility;
  j["dual_infeasibility"] = sol.dual_infeasibility;
  j["max_equality_residual"] = sol.max_equality_residual;
  j["min_eigenvalues"] = sol.min_eigenvalues;
  j["iterations"] = sol.iterations;
  j["wall_seconds"] = sol.wall_seconds;
  j["removed_rows"] = sol.removed_rows;
  if (include_dual) {
    j["lambda"] = std::vector<double>(sol.lambda.data(), sol.lambda.data() + sol.lambda.size());
    auto xs = nlohmann::json::array();
    for (const auto& x : sol.X) {
      std::vector<double> flat(x.data(), x.data() + x.size());
      xs.push_back({{"dim", x.rows()}, {"entries", flat}});
    }
    j["X"] = xs;
  }
  return j;
}

}  // namespace mub::sdpsolve
