#include "capdrift/judge/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace capdrift {

PearsonResult pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return {};
  if (x == y) return {true, 1.0};  // exact, by definition
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return {};  // constant series: no correlation
  double r = sxy / std::sqrt(sxx * syy);
  r = std::min(1.0, std::max(-1.0, r));
  return {true, r};
}

std::vector<AgreementMatrix> judge_agreement(
    const std::vector<AgreementRow>& rows) {
  // benchmark -> judge -> sample -> value (last write wins)
  std::map<std::string, std::map<std::string, std::map<std::string, double>>>
      by_bench;
  for (const AgreementRow& r : rows) {
    by_bench[r.benchmark][r.judge][r.sample_id] = r.value;
  }

  std::vector<AgreementMatrix> out;
  for (const auto& [bench, judges] : by_bench) {
    AgreementMatrix m;
    m.benchmark = bench;
    for (const auto& [judge, vals] : judges) {
      (void)vals;
      m.judges.push_back(judge);
    }
    const size_t k = m.judges.size();
    m.cells.assign(k, std::vector<AgreementCell>(k));
    for (size_t i = 0; i < k; ++i) {
      const auto& vi = judges.at(m.judges[i]);
      m.cells[i][i] = {true, 1.0, vi.size()};
      for (size_t j = i + 1; j < k; ++j) {
        const auto& vj = judges.at(m.judges[j]);
        std::vector<double> a, b;
        for (const auto& [sid, val] : vi) {
          auto it = vj.find(sid);
          if (it != vj.end()) {
            a.push_back(val);
            b.push_back(it->second);
          }
        }
        AgreementCell cell;
        cell.common = a.size();
        if (a.size() >= 3) {
          PearsonResult p = pearson(a, b);
          cell.defined = p.defined;
          cell.r = p.r;
        }
        m.cells[i][j] = cell;
        m.cells[j][i] = cell;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

nlohmann::json agreement_to_json(const std::vector<AgreementMatrix>& ms) {
  nlohmann::json out = nlohmann::json::array();
  for (const AgreementMatrix& m : ms) {
    nlohmann::json jm;
    jm["benchmark"] = m.benchmark;
    jm["judges"] = m.judges;
    nlohmann::json cells = nlohmann::json::array();
    for (size_t i = 0; i < m.judges.size(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (size_t j = 0; j < m.judges.size(); ++j) {
        const AgreementCell& c = m.cells[i][j];
        nlohmann::json jc;
        jc["common"] = c.common;
        if (c.defined) {
          // json stores the double; formatting happens at emit time
          jc["r"] = c.r;
        } else {
          jc["r"] = nullptr;
        }
        row.push_back(std::move(jc));
      }
      cells.push_back(std::move(row));
    }
    jm["cells"] = std::move(cells);
    out.push_back(std::move(jm));
  }
  return out;
}

}  // namespace capdrift
