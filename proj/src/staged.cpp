#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sumlab/divergence.hpp"
#include "sumlab/parallel.hpp"
#include "sumlab/specfun.hpp"

namespace sumlab::divergence {

namespace {

// Cesaro weights A_{N-k}/A_N, k <= D, for N far beyond the stage degrees,
// plus the limit N -> infinity (all ones). sup_N is taken over these and
// over N <= D.
std::vector<std::vector<double>> far_weights(double delta, std::int64_t D) {
  std::vector<std::vector<double>> out;
  for (std::int64_t N = 2 * std::max<std::int64_t>(D, 1); N <= (std::int64_t{1} << 26); N *= 2) {
    std::vector<double> w(static_cast<std::size_t>(D + 1));
    w[0] = 1.0;
    for (std::int64_t k = 0; k < D; ++k) {
      const double rem = static_cast<double>(N - k);
      w[static_cast<std::size_t>(k + 1)] = w[static_cast<std::size_t>(k)] * rem / (rem + delta);
    }
    out.push_back(std::move(w));
  }
  out.emplace_back(static_cast<std::size_t>(D + 1), 1.0);
  return out;
}

double max_abs(const std::vector<double>& v, std::size_t upto) {
  double best = 0.0;
  for (std::size_t i = 0; i <= upto && i < v.size(); ++i) best = std::max(best, std::abs(v[i]));
  return best;
}

void validate(const StagedOptions& o) {
  if (o.n < 2) throw std::invalid_argument("sphere dimension must be at least 2");
  if (o.stages < 1 || o.stages > 4) throw std::invalid_argument("stages must lie in 1..4");
  if (o.grid < 1) throw std::invalid_argument("grid must be nonempty");
  if (o.max_degree < 1) throw std::invalid_argument("max_degree must be positive");
  if (o.radii.empty() || o.degrees.empty()) throw std::invalid_argument("empty search schedule");
  for (std::int64_t d : o.degrees) {
    if (d < 0 || d > o.max_degree) throw std::invalid_argument("smoothing degree outside 0..max_degree");
  }
}

}  // namespace

double StagedFunction::operator()(const SpherePoint& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < parts.size(); ++j) s += stages[j].eta * parts[j](x) / stages[j].l1_normalizer;
  return s;
}

StagedFunction build_staged(const StagedOptions& options) {
  validate(options);
  StagedFunction result;
  result.options = options;
  const int n = options.n;
  const double d0 = specfun::critical_index(n);
  const std::int64_t D = options.max_degree;
  const auto Dz = static_cast<std::size_t>(D);
  const std::size_t G = options.grid;

  const auto grid = sphere::low_discrepancy_grid(n, G, options.seed);
  const CesaroPlan plan(d0, D);
  const auto peaks = kernel_peak_values(n, D);
  const auto far = far_weights(d0, D);
  std::map<std::int64_t, double> normalizers;

  // Spectrum proj_k F(x_g), k <= D, of the function built so far.
  std::vector<std::vector<double>> total(G, std::vector<double>(Dz + 1, 0.0));
  double previous_sup = 0.0;
  double eta_previous = 1.0;
  std::int64_t N_previous = 0;

  for (int j = 1; j <= options.stages; ++j) {
    Stage st;
    st.index = j;
    st.target = j - 2.0;
    st.eta_previous = eta_previous;
    st.kernel_peak = *std::max_element(peaks.begin(), peaks.begin() + N_previous + 1);
    // Largest eta meeting both constraints, halved once.
    st.eta = 0.5 * std::min(0.5 * eta_previous, 1.0 / st.kernel_peak);
    st.eta_halving_ok = st.eta <= 0.5 * eta_previous;
    st.eta_kernel_ok = st.eta * st.kernel_peak <= 1.0;
    st.threshold = previous_sup + j;
    const double required = 1.0 - 1.0 / j;
    // |E_j| > 1 - 1/j, so E_j must hold strictly more than this many points.
    const auto need = static_cast<std::size_t>(std::floor(required * static_cast<double>(G))) + 1;

    bool found = false;
    std::vector<std::vector<double>> part;  // spectra of f_j at the grid
    std::size_t predicted = 0;
    double r_previous = 0.0;
    for (std::size_t ri = 0; ri < options.radii.size() && !found; ++ri) {
      const double r = options.radii[ri];
      if (predicted > 0 && static_cast<double>(predicted) * std::pow(r_previous / r, n) >
                               1.5 * static_cast<double>(options.max_atoms)) {
        break;
      }
      const auto mu = witness_measure(n, r, options.seed + 1000 * static_cast<std::uint64_t>(j) + ri);
      predicted = mu.size();
      r_previous = r;
      if (mu.size() > options.max_atoms) break;
      std::vector<std::vector<double>> proj(G);
      parallel_for(G, [&](std::size_t b, std::size_t e) {
        for (std::size_t g = b; g < e; ++g) proj[g] = projection_sequence(mu, grid[g], D);
      });
      for (std::int64_t N1 : options.degrees) {
        auto it = normalizers.find(N1);
        if (it == normalizers.end()) it = normalizers.emplace(N1, kernel_l1_norm(n, d0 + 1.0, N1)).first;
        const double C = it->second;
        const auto mult = specfun::cesaro_ratios(d0 + 1.0, N1);
        std::vector<std::vector<double>> spec(G);
        std::vector<std::int64_t> first_pass(G, std::numeric_limits<std::int64_t>::max());
        parallel_for(G, [&](std::size_t b, std::size_t e) {
          for (std::size_t g = b; g < e; ++g) {
            std::vector<double> s(mult.size());
            for (std::size_t k = 0; k < mult.size(); ++k) s[k] = mult[k] * proj[g][k] / C;
            const auto means = plan(s);
            for (std::size_t N = 0; N < means.size(); ++N) {
              if (st.eta * std::abs(means[N]) > st.threshold) {
                first_pass[g] = static_cast<std::int64_t>(N);
                break;
              }
            }
            spec[g] = std::move(s);
          }
        });
        auto sorted = first_pass;
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(need - 1), sorted.end());
        const std::int64_t Nj = sorted[need - 1];
        if (Nj == std::numeric_limits<std::int64_t>::max()) continue;
        found = true;
        st.r = r;
        st.m = mu.size();
        st.N1 = N1;
        st.Nj = Nj;
        st.l1_normalizer = C;
        part = std::move(spec);
        result.parts.push_back(smooth_to_polynomial(mu, N1));
        break;
      }
    }
    if (!found) {
      std::ostringstream msg;
      msg << "stage " << j << ": no packing radius (m <= " << options.max_atoms << ") and smoothing degree (<= "
          << D << ") reached eta_j max_N |K_N * f_j| > " << st.threshold << " on more than "
          << required * 100.0 << "% of the grid";
      result.diagnostic = msg.str();
      return result;
    }

    std::vector<double> stage_sup(G);
    std::vector<double> total_sup(G);
    std::vector<double> all_sup(G);
    parallel_for(G, [&](std::size_t b, std::size_t e) {
      for (std::size_t g = b; g < e; ++g) {
        stage_sup[g] = st.eta * max_abs(plan(part[g]), static_cast<std::size_t>(st.Nj));
        for (std::size_t k = 0; k < part[g].size(); ++k) total[g][k] += st.eta * part[g][k];
        const auto means = plan(total[g]);
        total_sup[g] = max_abs(means, static_cast<std::size_t>(st.Nj));
        double best = max_abs(means, Dz);
        for (const auto& w : far) {
          double s = 0.0;
          for (std::size_t k = 0; k <= Dz; ++k) s += w[k] * total[g][k];
          best = std::max(best, std::abs(s));
        }
        all_sup[g] = best;
      }
    });
    for (std::size_t g = 0; g < G; ++g) {
      if (stage_sup[g] > st.threshold) st.passing.push_back(g);
    }
    st.grid_fraction = static_cast<double>(st.passing.size()) / static_cast<double>(G);
    st.stage_sup = quantiles(stage_sup);
    st.total_sup = quantiles(total_sup);
    previous_sup = *std::max_element(all_sup.begin(), all_sup.end());
    eta_previous = st.eta;
    N_previous = st.Nj;
    result.stages.push_back(std::move(st));
  }
  result.complete = true;
  return result;
}

void write_stage_json(std::ostream& out, const StagedFunction& f, const std::string& meta_line) {
  using nlohmann::json;
  auto q = [](const Quantiles& v) {
    return json{{"min", v.min}, {"q25", v.q25}, {"median", v.median}, {"q75", v.q75}, {"max", v.max}};
  };
  json doc;
  doc["meta"] = meta_line;
  doc["n"] = f.options.n;
  doc["stages_requested"] = f.options.stages;
  doc["grid"] = f.options.grid;
  doc["seed"] = f.options.seed;
  doc["max_atoms"] = f.options.max_atoms;
  doc["max_degree"] = f.options.max_degree;
  doc["complete"] = f.complete;
  doc["diagnostic"] = f.diagnostic;
  json stages = json::array();
  for (const auto& s : f.stages) {
    stages.push_back({{"stage", s.index},
                      {"eta", s.eta},
                      {"r", s.r},
                      {"m", s.m},
                      {"N1", s.N1},
                      {"Nj", s.Nj},
                      {"l1_normalizer", s.l1_normalizer},
                      {"threshold", s.threshold},
                      {"grid_fraction", s.grid_fraction},
                      {"target", s.target},
                      {"eta_previous", s.eta_previous},
                      {"kernel_peak", s.kernel_peak},
                      {"eta_halving_ok", s.eta_halving_ok},
                      {"eta_kernel_ok", s.eta_kernel_ok},
                      {"stage_sup", q(s.stage_sup)},
                      {"total_sup", q(s.total_sup)}});
  }
  doc["stages"] = stages;
  out << doc.dump(2) << '\n';
}

}  // namespace sumlab::divergence
