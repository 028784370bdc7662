// Command-line front end: simulation, analytic evaluation, density
// validation, rate optimization, and the preset figure experiments. All
// outputs are CSV with a schema-version comment line; identical configuration
// and seed give byte-identical files.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "d2dsim/analytic.hpp"
#include "d2dsim/csv.hpp"
#include "d2dsim/geometry.hpp"
#include "d2dsim/quadrature.hpp"
#include "d2dsim/rate.hpp"
#include "d2dsim/rng.hpp"
#include "d2dsim/scheduler.hpp"
#include "d2dsim/sir.hpp"

namespace {

struct CommonOptions {
  double lambda_a = 1.0;
  double lambda_d = 10.0;
  double lambda_c = 10.0;
  double alpha = 4.0;
  double r_d = 0.3;
  int n_sc = 10;
  std::string mode = "coord";
  std::string cell_approx = "b2";
  std::uint64_t seed = 1;
  std::size_t trials = 100000;
  int threads = 0;
  double theta_db = 0.0;
  std::string out_path;
};

d2d::ScheduleMode parse_mode(const std::string& s) {
  return s == "coord" ? d2d::ScheduleMode::kCoordinated : d2d::ScheduleMode::kUncoordinated;
}

d2d::CellApprox parse_approx(const std::string& s) { return s == "b1" ? d2d::kB1 : d2d::kB2; }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' only, byte-stable
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

d2d::D2dBatchConfig d2d_config(const CommonOptions& opt) {
  d2d::D2dBatchConfig cfg;
  cfg.ppp.lambda_a = opt.lambda_a;
  cfg.ppp.lambda_d = opt.lambda_d;
  cfg.ppp.r_d = opt.r_d;
  cfg.ppp.window = d2d::SimWindow::for_expected_count(opt.lambda_a);
  cfg.ppp.seed = opt.seed;
  cfg.schedule.n_subchannels = opt.n_sc;
  cfg.schedule.mode = parse_mode(opt.mode);
  cfg.alpha = opt.alpha;
  cfg.n_trials = opt.trials;
  cfg.n_threads = opt.threads;
  return cfg;
}

d2d::AnalyticParams analytic_params(const CommonOptions& opt) {
  d2d::AnalyticParams p;
  p.lambda_a = opt.lambda_a;
  p.lambda_d = opt.lambda_d;
  p.n_subchannels = opt.n_sc;
  p.r_d = opt.r_d;
  p.alpha = opt.alpha;
  p.cell_approx = parse_approx(opt.cell_approx);
  return p;
}

void run_simulate(const CommonOptions& opt) {
  const Eigen::ArrayXd grid_db = d2d::db_grid(-20.0, 20.0, 41);
  const d2d::EmpiricalCcdf ccdf = d2d::run_d2d_batch(d2d_config(opt), d2d::db_to_linear(grid_db));

  auto out = open_out(opt.out_path);
  d2d::CsvWriter csv(out);
  csv.comment("d2dsim csv v1 simulate");
  csv.header({"theta_db[dB]", "sim_ccdf[prob]", "sim_outage[prob]", "ci_halfwidth[prob]"});
  for (Eigen::Index i = 0; i < grid_db.size(); ++i) {
    csv.row({grid_db[i], ccdf.survival[i], 1.0 - ccdf.survival[i], ccdf.half_width[i]});
  }
}

void run_analytic(const CommonOptions& opt) {
  const Eigen::ArrayXd grid_db = d2d::db_grid(-20.0, 20.0, 41);
  const Eigen::ArrayXd grid = d2d::db_to_linear(grid_db);
  d2d::AnalyticParams p = analytic_params(opt);

  auto out = open_out(opt.out_path);
  d2d::CsvWriter csv(out);
  csv.comment("d2dsim csv v1 analytic");
  csv.header({"theta_db[dB]", "ana_uncoord[prob]", "ana_coord_b1[prob]", "ana_coord_b2[prob]"});
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double unc = d2d::uncoordinated_ccdf(p, grid[i]);
    double b1 = unc, b2 = unc;  // coordinated == uncoordinated at N = 1
    if (p.n_subchannels >= 2) {
      d2d::AnalyticParams q = p;
      q.cell_approx = d2d::kB1;
      b1 = d2d::unconditional_ccdf(q, grid[i]);
      q.cell_approx = d2d::kB2;
      b2 = d2d::unconditional_ccdf(q, grid[i]);
    }
    csv.row({grid_db[i], unc, b1, b2});
  }
}

void run_densities(const CommonOptions& opt) {
  d2d::D2dBatchConfig cfg = d2d_config(opt);
  cfg.schedule.mode = d2d::ScheduleMode::kCoordinated;
  const auto records = d2d::run_d2d_trials(cfg);

  const double R = cfg.ppp.window.radius;
  const double annulus_area = M_PI * (R * R - 0.25 * R * R);

  double sum_ann = 0.0, sum_ann2 = 0.0, sum_in = 0.0, sum_in2 = 0.0, sum_pred = 0.0;
  d2d::AnalyticParams p = analytic_params(opt);
  p.cell_approx = d2d::kB2;
  for (const auto& r : records) {
    sum_ann += r.intercell_annulus_count;
    sum_ann2 += static_cast<double>(r.intercell_annulus_count) * r.intercell_annulus_count;
    sum_in += r.intracell_count;
    sum_in2 += static_cast<double>(r.intracell_count) * r.intracell_count;
    const auto d = d2d::interferer_densities(p, r.r_a);
    sum_pred += d.intracell * d2d::cell_area(p, r.r_a);
  }
  const double n = static_cast<double>(records.size());
  const double mean_ann = sum_ann / n;
  const double se_ann = std::sqrt((sum_ann2 - sum_ann * sum_ann / n) / (n - 1) / n);
  const double mean_in = sum_in / n;
  const double se_in = std::sqrt((sum_in2 - sum_in * sum_in / n) / (n - 1) / n);
  const double pred_in = sum_pred / n;

  auto out = open_out(opt.out_path);
  d2d::CsvWriter csv(out);
  csv.comment("d2dsim csv v1 densities");
  csv.header({"n_trials[1]", "n_sc[1]", "measured_intercell_density[1/area]",
              "predicted_intercell_density[1/area]", "intercell_density_se[1/area]",
              "measured_intracell_count[1]", "predicted_intracell_count[1]",
              "intracell_count_se[1]", "intracell_rel_err[1]"});
  const double meas_density = mean_ann / annulus_area;
  csv.row({n, static_cast<double>(opt.n_sc), meas_density, opt.lambda_d / opt.n_sc,
           se_ann / annulus_area, mean_in, pred_in, se_in,
           (mean_in - pred_in) / pred_in});
}

void run_rate(const CommonOptions& opt, bool optimize) {
  d2d::RateParams p;
  p.lambda_a = opt.lambda_a;
  p.lambda_c = opt.lambda_c;
  p.lambda_d = opt.lambda_d;
  p.eta = opt.lambda_d / (opt.lambda_c + opt.lambda_d);
  p.theta0 = std::pow(10.0, opt.theta_db / 10.0);
  p.alpha = opt.alpha;
  p.r_d = opt.r_d;
  p.mode = parse_mode(opt.mode);
  p.cell_approx = parse_approx(opt.cell_approx);
  p.seed = opt.seed;

  const d2d::CellularQuantities cellular =
      d2d::estimate_cellular(p.lambda_a, p.lambda_c, p.alpha, p.theta0, opt.trials, opt.seed);

  auto out = open_out(opt.out_path);
  d2d::CsvWriter csv(out);
  csv.comment(optimize ? "d2dsim csv v1 optimize" : "d2dsim csv v1 rate");
  csv.header({"n_sc[1]", "r_total[b/s/Hz]", "r_cellular[b/s/Hz]", "r_d2d[b/s/Hz]",
              "e_inv_kc[1]", "p_cov_cellular[prob]", "p_cov_d2d[prob]"});
  const auto emit = [&](const d2d::RateBreakdown& b) {
    csv.row({static_cast<double>(b.n), b.r_total, b.r_cellular, b.r_d2d, b.e_inv_kc,
             b.p_cov_cellular, b.p_cov_d2d});
  };
  if (optimize) {
    for (int n = p.n_min; n <= p.n_max; ++n) emit(d2d::average_rate(p, cellular, n));
  } else {
    emit(d2d::average_rate(p, cellular, opt.n_sc));
  }
}

void run_fig2(const CommonOptions& opt) {
  const Eigen::ArrayXd grid_db = d2d::db_grid(-20.0, 20.0, 41);
  const Eigen::ArrayXd grid = d2d::db_to_linear(grid_db);

  CommonOptions base = opt;
  base.lambda_a = 1.0;
  base.lambda_d = 10.0;
  base.alpha = 4.0;
  base.r_d = 0.6 / (2.0 * std::sqrt(base.lambda_a));
  base.mode = "coord";

  CommonOptions o10 = base, o20 = base;
  o10.n_sc = 10;
  o20.n_sc = 20;
  o20.seed = d2d::detail::mix64(base.seed ^ 20);
  const d2d::EmpiricalCcdf sim10 = d2d::run_d2d_batch(d2d_config(o10), grid);
  const d2d::EmpiricalCcdf sim20 = d2d::run_d2d_batch(d2d_config(o20), grid);

  d2d::AnalyticParams p = analytic_params(base);
  p.n_subchannels = 10;

  auto out = open_out(opt.out_path);
  d2d::CsvWriter csv(out);
  csv.comment("d2dsim csv v1 figure fig2 (lambda_a=1 lambda_d=10 alpha=4 rd=0.3; analytic coord at N=10)");
  csv.header({"theta_db[dB]", "sim_coord_N10[prob]", "sim_coord_N20[prob]", "ana_coord_B1[prob]",
              "ana_coord_B2[prob]", "ana_uncoord_N1[prob]", "ana_uncoord_N10[prob]",
              "ana_uncoord_N20[prob]", "ci_halfwidth[prob]"});
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    d2d::AnalyticParams q = p;
    q.cell_approx = d2d::kB1;
    const double b1 = d2d::unconditional_ccdf(q, grid[i]);
    q.cell_approx = d2d::kB2;
    const double b2 = d2d::unconditional_ccdf(q, grid[i]);
    d2d::AnalyticParams u = p;
    u.n_subchannels = 1;
    const double unc1 = d2d::uncoordinated_ccdf(u, grid[i]);
    u.n_subchannels = 10;
    const double unc10 = d2d::uncoordinated_ccdf(u, grid[i]);
    u.n_subchannels = 20;
    const double unc20 = d2d::uncoordinated_ccdf(u, grid[i]);
    csv.row({grid_db[i], sim10.survival[i], sim20.survival[i], b1, b2, unc1, unc10, unc20,
             std::max(sim10.half_width[i], sim20.half_width[i])});
  }
}

void run_fig3(const CommonOptions& opt) {
  const std::vector<double> theta_dbs = {-10.0, 0.0, 10.0};
  Eigen::ArrayXd thetas(3);
  for (int i = 0; i < 3; ++i) thetas[i] = std::pow(10.0, theta_dbs[static_cast<std::size_t>(i)] / 10.0);

  CommonOptions base = opt;
  base.lambda_a = 1.0;
  base.lambda_d = 10.0;
  base.alpha = 4.0;
  base.n_sc = 10;
  base.mode = "coord";

  auto out = open_out(opt.out_path);
  d2d::CsvWriter csv(out);
  csv.comment("d2dsim csv v1 figure fig3 (lambda_a=1 lambda_d=10 alpha=4 N=10)");
  csv.header({"rd[dist]", "sim_outage_m10dB[prob]", "ana_b2_outage_m10dB[prob]",
              "unc_outage_m10dB[prob]", "sim_outage_0dB[prob]", "ana_b2_outage_0dB[prob]",
              "unc_outage_0dB[prob]", "sim_outage_p10dB[prob]", "ana_b2_outage_p10dB[prob]",
              "unc_outage_p10dB[prob]", "ci_halfwidth[prob]"});

  for (int k = 1; k <= 13; ++k) {
    CommonOptions o = base;
    o.r_d = 0.1 * k;
    o.seed = d2d::detail::mix64(base.seed ^ static_cast<std::uint64_t>(k));
    const d2d::EmpiricalCcdf sim = d2d::run_d2d_batch(d2d_config(o), thetas);
    d2d::AnalyticParams p = analytic_params(o);
    p.cell_approx = d2d::kB2;
    std::vector<double> row{o.r_d};
    double ci = 0.0;
    for (int i = 0; i < 3; ++i) {
      row.push_back(1.0 - sim.survival[i]);
      row.push_back(1.0 - d2d::unconditional_ccdf(p, thetas[i]));
      row.push_back(1.0 - d2d::uncoordinated_ccdf(p, thetas[i]));
      ci = std::max(ci, sim.half_width[i]);
    }
    row.push_back(ci);
    // interleave: sim/ana/unc per theta already ordered above
    csv.row(row);
  }
}

void run_fig4(const CommonOptions& opt) {
  d2d::RateParams p;
  p.lambda_a = 1.0;
  p.lambda_c = 10.0;
  p.lambda_d = 10.0;
  p.eta = 0.5;  // fair bandwidth partition lambda_d / (lambda_c + lambda_d)
  p.theta0 = 1.0;
  p.alpha = 4.0;
  p.cell_approx = d2d::kB2;
  p.seed = opt.seed;

  const d2d::CellularQuantities cell_d2d =
      d2d::estimate_cellular(p.lambda_a, p.lambda_c, p.alpha, p.theta0, opt.trials, opt.seed);
  const d2d::CellularQuantities cell_total = d2d::estimate_cellular(
      p.lambda_a, p.lambda_c + p.lambda_d, p.alpha, p.theta0, opt.trials,
      d2d::detail::mix64(opt.seed ^ 0xba5eull));
  const double baseline = d2d::baseline_rate(cell_total, p.theta0, p.log_base);

  auto out = open_out(opt.out_path);
  d2d::CsvWriter csv(out);
  csv.comment("d2dsim csv v1 figure fig4 (lambda_a=1 lambda_c=lambda_d=10 theta0=0dB eta=0.5)");
  csv.header({"rd[dist]", "rate_coord[b/s/Hz]", "n_opt_coord[1]", "rate_uncoord[b/s/Hz]",
              "n_opt_uncoord[1]", "rate_n1[b/s/Hz]", "baseline[b/s/Hz]"});
  for (int k = 2; k <= 24; ++k) {
    p.r_d = 0.025 * k;
    p.mode = d2d::ScheduleMode::kCoordinated;
    const d2d::RateBreakdown coord = d2d::optimize_subchannels(p, cell_d2d);
    const d2d::RateBreakdown n1 = d2d::average_rate(p, cell_d2d, 1);
    p.mode = d2d::ScheduleMode::kUncoordinated;
    const d2d::RateBreakdown uncoord = d2d::optimize_subchannels(p, cell_d2d);
    csv.row({p.r_d, coord.r_total, static_cast<double>(coord.n), uncoord.r_total,
             static_cast<double>(uncoord.n), n1.r_total, baseline});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlay D2D scheduling simulator and analytic toolkit"};
  app.fallthrough();  // subcommands share the global option set
  app.set_config("--config", "", "flat key=value configuration file");

  CommonOptions opt;
  app.add_option("--seed", opt.seed, "master RNG seed");
  app.add_option("--trials", opt.trials, "Monte Carlo trials per batch");
  app.add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  app.add_option("--lambda-a", opt.lambda_a, "AP density");
  app.add_option("--lambda-d", opt.lambda_d, "D2D TX density");
  app.add_option("--lambda-c", opt.lambda_c, "cellular RX density");
  app.add_option("--alpha", opt.alpha, "path loss exponent");
  app.add_option("--rd", opt.r_d, "D2D link distance");
  app.add_option("--n-sc", opt.n_sc, "number of subchannels");
  app.add_option("--theta-db", opt.theta_db, "SIR threshold in dB");
  app.add_option("--mode", opt.mode, "scheduling mode")
      ->check(CLI::IsMember({"coord", "uncoord"}));
  app.add_option("--cell-approx", opt.cell_approx, "typical-cell approximation")
      ->check(CLI::IsMember({"b1", "b2"}));
  app.add_option("--out", opt.out_path, "output CSV path")->required();

  auto* simulate = app.add_subcommand("simulate", "empirical SIR ccdf of the typical D2D link");
  auto* analytic = app.add_subcommand("analytic", "closed-form / integral SIR ccdf curves");
  auto* densities = app.add_subcommand("densities", "cochannel interferer density validation");
  auto* rate = app.add_subcommand("rate", "average user rate at a fixed subchannel count");
  auto* optimize = app.add_subcommand("optimize", "average user rate over the full N range");
  auto* figure = app.add_subcommand("figure", "preset experiment reproductions");
  std::string which_figure;
  figure->add_option("name", which_figure, "fig2 | fig3 | fig4")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*simulate) run_simulate(opt);
    if (*analytic) run_analytic(opt);
    if (*densities) run_densities(opt);
    if (*rate) run_rate(opt, false);
    if (*optimize) run_rate(opt, true);
    if (*figure) {
      if (which_figure == "fig2") run_fig2(opt);
      if (which_figure == "fig3") run_fig3(opt);
      if (which_figure == "fig4") run_fig4(opt);
    }
  } catch (const d2d::QuadratureError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
