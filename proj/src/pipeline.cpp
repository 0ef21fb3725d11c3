#include "sturmet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "sturmet/io.hpp"
#include "sturmet/metric.hpp"

namespace sturmet {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  return os;
}

std::string describe_reality(const RealityReport& r) {
  std::ostringstream os;
  os << r.n_real << " real, " << r.n_complex_pairs << " conjugate pairs, " << r.n_unpaired
     << " unpaired" << (r.broken ? " (broken)" : "");
  return os.str();
}

}  // namespace

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum) {
  os << "index,re_lambda,im_lambda,pairing_residual,degenerate\n";
  os << std::setprecision(17);
  for (int k = 0; k < spectrum.dim(); ++k) {
    os << k << ',' << spectrum.eigencharges[k].real() << ',' << spectrum.eigencharges[k].imag()
       << ',' << spectrum.pairing_residuals[k] << ',' << (spectrum.degenerate_flags[k] ? 1 : 0)
       << '\n';
  }
}

void write_reality_summary(std::ostream& os, const RealityReport& report) {
  os << "n_real,n_complex_pairs,n_unpaired,broken\n";
  os << report.n_real << ',' << report.n_complex_pairs << ',' << report.n_unpaired << ','
     << (report.broken ? 1 : 0) << '\n';
}

SweepResult run_sweep(const RunConfig& config) {
  const SweepSpec& sweep = *config.sweep;
  SweepResult result;
  result.parameter = to_string(sweep.parameter);
  result.values.resize(sweep.steps);
  for (int i = 0; i < sweep.steps; ++i)
    result.values[i] =
        sweep.start + (sweep.stop - sweep.start) * static_cast<double>(i) / (sweep.steps - 1);

  result.charges.assign(sweep.steps, Vector());
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= sweep.steps || failed.load()) return;
      try {
        ProblemSpec problem = config.problem;
        if (sweep.parameter == SweepParameter::KappaSq)
          problem.kappa_sq = Complex{result.values[i], 0.0};
        else
          problem.ell = result.values[i];
        result.charges[i] = pencil_eigenvalues(assemble_pencil(problem));
      } catch (const std::exception& e) {
        failed.store(true);
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error_message.empty()) error_message = e.what();
      }
    }
  };

  const int n_workers = std::max(1, std::min(config.workers, sweep.steps));
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) throw EigensolverFailure("sweep: " + error_message);

  // branch continuity: greedy nearest-neighbor match against the previous
  // step; a collision means the globally nearest candidate was already
  // claimed by an earlier branch (trajectories crossing within one step)
  for (int i = 1; i < sweep.steps; ++i) {
    const Vector& prev = result.charges[i - 1];
    const Vector& cur = result.charges[i];
    const int n = static_cast<int>(cur.size());
    Vector matched(n);
    std::vector<bool> used(n, false);
    for (int b = 0; b < n; ++b) {
      int best = -1, best_any = -1;
      double best_dist = std::numeric_limits<double>::infinity();
      double best_any_dist = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n; ++k) {
        const double dist = std::abs(cur[k] - prev[b]);
        if (dist < best_any_dist) {
          best_any_dist = dist;
          best_any = k;
        }
        if (!used[k] && dist < best_dist) {
          best_dist = dist;
          best = k;
        }
      }
      used[best] = true;
      matched[b] = cur[best];
      if (best_any != best) ++result.collisions;
    }
    result.charges[i] = matched;
  }
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << "parameter,value,branch,re_lambda,im_lambda\n";
  os << std::setprecision(17);
  for (size_t i = 0; i < sweep.values.size(); ++i)
    for (int b = 0; b < sweep.charges[i].size(); ++b)
      os << sweep.parameter << ',' << sweep.values[i] << ',' << b << ','
         << sweep.charges[i][b].real() << ',' << sweep.charges[i][b].imag() << '\n';
}

void write_oracle_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "n,h,charge_index,lambda_numeric,lambda_reference,rel_error\n";
  os << std::setprecision(17);
  for (const auto& row : table.rows)
    for (size_t i = 0; i < row.charges.size(); ++i)
      os << row.n << ',' << row.h << ',' << i << ',' << row.charges[i] << ',' << row.reference[i]
         << ',' << row.rel_errors[i] << '\n';
}

std::string oracle_text(const ConvergenceTable& table) {
  std::ostringstream os;
  os << "reference: " << (table.analytic_reference ? "analytic charges 2k(n+l+1)" : "fine grid")
     << '\n';
  os << std::left << std::setw(8) << "n" << std::setw(14) << "h";
  const size_t m = table.rows.empty() ? 0 : table.rows.front().charges.size();
  for (size_t i = 0; i < m; ++i) os << std::setw(16) << ("rel_err[" + std::to_string(i) + "]");
  os << '\n';
  for (const auto& row : table.rows) {
    os << std::left << std::setw(8) << row.n << std::scientific << std::setprecision(3)
       << std::setw(14) << row.h;
    for (double e : row.rel_errors) os << std::setw(16) << e;
    os << '\n';
  }
  if (table.rows.size() >= 2)
    os << "observed order: " << std::fixed << std::setprecision(2) << table.observed_order
       << (table.order_defect ? "  (DEFECT: below 1.5)" : "") << '\n';
  return os.str();
}

RunResult run(const RunConfig& config) {
  RunResult result;
  std::ostringstream summary;
  try {
    config.validate();
    const Tolerances tol = make_tolerances(config.tolerance_overrides);
    const fs::path out_dir(config.output_dir);
    fs::create_directories(out_dir);

    auto write_file = [&](const std::string& name, auto&& writer) {
      const fs::path path = out_dir / name;
      auto os = open_output(path);
      writer(os);
      result.files_written.push_back(path.string());
    };

    if (config.pipeline == PipelineKind::Sweep) {
      const SweepResult sweep = run_sweep(config);
      write_file("sweep.csv", [&](std::ostream& os) { write_sweep_csv(os, sweep); });
      summary << "sweep over " << sweep.parameter << ": " << sweep.values.size() << " steps, "
              << sweep.collisions << " branch collisions";
      result.exit_code = kExitOk;
    } else if (config.pipeline == PipelineKind::Oracle) {
      const ConvergenceTable table =
          convergence_study(config.problem, config.refinements, 3, tol);
      write_file("oracle.csv", [&](std::ostream& os) { write_oracle_csv(os, table); });
      write_file("oracle.txt", [&](std::ostream& os) { os << oracle_text(table); });
      const double worst = table.rows.back().rel_errors.empty()
                               ? std::numeric_limits<double>::infinity()
                               : *std::max_element(table.rows.back().rel_errors.begin(),
                                                   table.rows.back().rel_errors.end());
      const bool ok = worst <= tol.oracle_tol && !table.order_defect;
      summary << "oracle: worst relative error " << std::scientific << std::setprecision(3)
              << worst;
      if (table.rows.size() >= 2)
        summary << ", observed order " << std::fixed << std::setprecision(2)
                << table.observed_order;
      result.exit_code = ok ? kExitOk : kExitVerification;
    } else {
      const OperatorPencil pencil = assemble_pencil(config.problem, tol.weight_floor);
      if (config.export_pencil)
        write_file("pencil.txt", [&](std::ostream& os) { write_pencil(os, pencil); });

      Spectrum spectrum = solve_pencil(pencil, tol);
      spectrum = biorthonormalize(std::move(spectrum), pencil, tol);
      const RealityReport reality = classify_reality(spectrum, tol.reality_tol);

      write_file("spectrum.csv", [&](std::ostream& os) { write_spectrum_csv(os, spectrum); });
      write_file("reality.csv", [&](std::ostream& os) { write_reality_summary(os, reality); });
      if (config.dump_vectors)
        write_file("vectors.txt", [&](std::ostream& os) {
          write_matrix_triplets(os, spectrum.right, "right");
          write_matrix_triplets(os, spectrum.left, "left");
        });
      summary << "spectrum: " << describe_reality(reality);

      if (config.pipeline == PipelineKind::Verify) {
        MetricOptions opts;
        opts.herm_tol = tol.herm_tol;
        opts.pd_floor = tol.pd_floor;
        opts.fail_on_asymmetry = false;  // the suite reports asymmetry instead
        const MetricBundle bundle = build_metric_bundle(spectrum, pencil, opts);
        const VerificationReport report = run_suite(pencil, spectrum, bundle, tol);
        write_file("verification.json",
                   [&](std::ostream& os) { os << report.to_json().dump(2) << '\n'; });
        write_file("verification.txt", [&](std::ostream& os) { os << report.to_text(); });
        if (config.export_metric)
          write_file("metric.txt", [&](std::ostream& os) {
            write_matrix_triplets(os, bundle.theta, "theta");
            if (bundle.positive) {
              write_matrix_triplets(os, bundle.omega, "omega");
              write_matrix_triplets(os, bundle.omega_inv, "omega_inv");
              write_matrix_triplets(os, bundle.h_herm, "h_herm");
              write_matrix_triplets(os, bundle.w_herm, "w_herm");
            }
          });
        summary << "; verification " << (report.overall ? "pass" : "FAIL");
        result.exit_code = report.overall ? kExitOk : kExitVerification;
      } else {
        result.exit_code = kExitOk;
      }
    }
  } catch (const ConfigError& e) {
    result.exit_code = kExitConfig;
    summary << e.what();
  } catch (const DegenerateSpectrum& e) {
    result.exit_code = kExitDegenerate;
    summary << e.what();
  } catch (const NearDefectivePair& e) {
    result.exit_code = kExitDegenerate;
    summary << e.what();
  } catch (const EigensolverFailure& e) {
    result.exit_code = kExitSolver;
    summary << e.what();
  } catch (const InvalidGrid& e) {
    result.exit_code = kExitProblem;
    summary << e.what();
  } catch (const SingularWeight& e) {
    result.exit_code = kExitProblem;
    summary << e.what();
  } catch (const RankDeficient& e) {
    result.exit_code = kExitMetric;
    summary << e.what();
  } catch (const AsymmetryExceeded& e) {
    result.exit_code = kExitMetric;
    summary << e.what();
  } catch (const NotPositiveDefinite& e) {
    result.exit_code = kExitMetric;
    summary << e.what();
  } catch (const Error& e) {
    result.exit_code = kExitProblem;
    summary << e.what();
  } catch (const std::exception& e) {
    result.exit_code = kExitProblem;
    summary << e.what();
  }
  result.summary = summary.str();
  return result;
}

}  // namespace sturmet
