#include "dimest/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dimest/autoencoder.hpp"
#include "dimest/data.hpp"
#include "dimest/dimension.hpp"
#include "dimest/errors.hpp"
#include "dimest/isomap.hpp"
#include "dimest/pca.hpp"
#include "dimest/rng.hpp"
#include "dimest/svp.hpp"

namespace dimest {

std::string fmt_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

namespace {

using nlohmann::json;

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ArgumentError("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw ArgumentError("failed writing '" + path + "'");
  }
}

void write_report(const RunReport& report, const std::string& out_path) {
  json j;
  j["command"] = report.command;
  j["params"] = report.params;
  j["results"] = report.results;
  j["wall_time_seconds"] = report.wall_time_seconds;
  write_text_file(out_path + ".report.json", j.dump(2) + "\n");
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
  long used = 0;
};

Stats summarize(const std::vector<double>& values) {
  Stats stats;
  stats.used = static_cast<long>(values.size());
  if (values.empty()) return stats;
  double sum = 0.0;
  for (const double v : values) sum += v;
  stats.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) {
      ss += (v - stats.mean) * (v - stats.mean);
    }
    stats.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return stats;
}

void put_ae_params(std::map<std::string, std::string>& params,
                   const AeOptions& ae) {
  params["lambda"] = fmt_double(ae.lambda);
  params["learning_rate"] = fmt_double(ae.learning_rate);
  params["epochs"] = std::to_string(ae.epochs);
  params["batch_size"] = std::to_string(ae.batch_size);
}

void put_mnist_params(std::map<std::string, std::string>& params,
                      const MnistOptions& mnist) {
  params["mnist_images"] = mnist.images_path;
  params["mnist_labels"] = mnist.labels_path;
}

void check_method(const std::string& method) {
  if (method != "pca" && method != "isomap" && method != "ae") {
    throw ArgumentError("unknown method '" + method +
                        "' (expected pca, isomap, or ae)");
  }
}

AeConfig configure_ae(AeConfig base, const AeOptions& ae, std::uint64_t seed) {
  base.lambda = ae.lambda;
  base.learning_rate = ae.learning_rate;
  base.epochs = ae.epochs;
  base.batch_size = ae.batch_size;
  base.seed = seed;
  return base;
}

// Seed streams per (digit-or-width, repeat): slot 0 = training subset,
// slot 1 = AE training, slot 2 = held-out subset.
std::uint64_t stream_seed(std::uint64_t base, long group, int slot,
                          long repeat) {
  return derive_seed(base, static_cast<std::uint64_t>(group) * 4 +
                               static_cast<std::uint64_t>(slot),
                     static_cast<std::uint64_t>(repeat));
}

}  // namespace

RunReport cmd_pca_scree(const PcaScreeOptions& opt) {
  Stopwatch watch;
  RunReport report;
  report.command = "pca-scree";
  put_mnist_params(report.params, opt.mnist);
  report.params["digit"] = std::to_string(opt.digit);
  report.params["samples"] = std::to_string(opt.samples);
  report.params["seed"] = std::to_string(opt.seed);
  report.params["center"] = opt.center ? "true" : "false";
  report.params["out"] = opt.out_path;

  const MnistSet set = load_mnist_idx(opt.mnist.images_path, opt.mnist.labels_path);
  const DataMatrix subset =
      digit_subset(set, opt.digit, opt.samples, stream_seed(opt.seed, opt.digit, 0, 0));
  const PcaModel model = fit_pca(subset, opt.center);
  const ScreeData data = scree(model);

  std::ostringstream csv;
  csv << "index,normalized_variance\n";
  for (Eigen::Index i = 0; i < data.normalized_variance.size(); ++i) {
    csv << (i + 1) << "," << fmt_double(data.normalized_variance[i]) << "\n";
    std::map<std::string, std::string> row;
    row["index"] = std::to_string(i + 1);
    row["normalized_variance"] = fmt_double(data.normalized_variance[i]);
    report.results.push_back(std::move(row));
  }
  write_text_file(opt.out_path, csv.str());
  report.wall_time_seconds = watch.seconds();
  write_report(report, opt.out_path);
  return report;
}

RunReport cmd_recon_curve(const ReconCurveOptions& opt) {
  Stopwatch watch;
  RunReport report;
  report.command = "recon-curve";
  put_mnist_params(report.params, opt.mnist);
  report.params["digit"] = std::to_string(opt.digit);
  report.params["samples"] = std::to_string(opt.samples);
  report.params["seed"] = std::to_string(opt.seed);
  report.params["center"] = opt.center ? "true" : "false";
  report.params["out"] = opt.out_path;

  const MnistSet set = load_mnist_idx(opt.mnist.images_path, opt.mnist.labels_path);
  const DataMatrix subset =
      digit_subset(set, opt.digit, opt.samples, stream_seed(opt.seed, opt.digit, 0, 0));
  const PcaModel model = fit_pca(subset, opt.center);

  std::vector<Eigen::Index> ks = opt.ks;
  if (ks.empty()) {
    for (Eigen::Index k = 1; k <= model.decomposition.singular_values.size(); ++k) {
      ks.push_back(k);
    }
  }
  std::ostringstream ks_text;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) ks_text << ",";
    ks_text << ks[i];
  }
  report.params["ks"] = ks_text.str();

  const auto curve = reconstruction_error_curve(model, subset, ks);
  std::ostringstream csv;
  csv << "k,relative_error\n";
  for (const auto& [k, error] : curve) {
    csv << k << "," << fmt_double(error) << "\n";
    std::map<std::string, std::string> row;
    row["k"] = std::to_string(k);
    row["relative_error"] = fmt_double(error);
    report.results.push_back(std::move(row));
  }
  write_text_file(opt.out_path, csv.str());
  report.wall_time_seconds = watch.seconds();
  write_report(report, opt.out_path);
  return report;
}

namespace {

// Spectrum for one repeat of a per-digit experiment.
Spectrum mnist_spectrum(const std::string& method, const MnistSet& set,
                        const DeMnistOptions& opt, int digit, long repeat,
                        const DataMatrix& subset) {
  if (method == "pca") {
    return fit_pca(subset, opt.center).spectrum();
  }
  if (method == "isomap") {
    return isomap_embed(subset, opt.neighbors, 1).spectrum;
  }
  const AeConfig config =
      configure_ae(mnist_ae_config(), opt.ae,
                   stream_seed(opt.seed, digit, 1, repeat));
  const AeModel model = train(config, subset);
  if (opt.holdout) {
    const DataMatrix holdout = digit_subset(
        set, digit, opt.samples, stream_seed(opt.seed, digit, 2, repeat));
    return to_svp(hidden_activations(model, holdout));
  }
  return to_svp(hidden_activations(model, subset));
}

}  // namespace

RunReport cmd_de_mnist(const DeMnistOptions& opt) {
  Stopwatch watch;
  check_method(opt.method);
  if (opt.digits.empty()) {
    throw ArgumentError("at least one digit is required");
  }
  if (opt.repeats < 1) {
    throw ArgumentError("repeats must be positive");
  }
  RunReport report;
  report.command = "de-mnist";
  put_mnist_params(report.params, opt.mnist);
  put_ae_params(report.params, opt.ae);
  std::ostringstream digits_text;
  for (std::size_t i = 0; i < opt.digits.size(); ++i) {
    if (i) digits_text << ",";
    digits_text << opt.digits[i];
  }
  report.params["digits"] = digits_text.str();
  report.params["method"] = opt.method;
  report.params["samples"] = std::to_string(opt.samples);
  report.params["repeats"] = std::to_string(opt.repeats);
  report.params["seed"] = std::to_string(opt.seed);
  report.params["threshold_gte"] = fmt_double(opt.threshold_gte);
  report.params["threshold_cum"] = fmt_double(opt.threshold_cum);
  report.params["neighbors"] = std::to_string(opt.neighbors);
  report.params["center"] = opt.center ? "true" : "false";
  report.params["holdout"] = opt.holdout ? "true" : "false";
  report.params["out"] = opt.out_path;

  const MnistSet set = load_mnist_idx(opt.mnist.images_path, opt.mnist.labels_path);

  std::ostringstream csv;
  csv << "digit,method,rule,threshold,mean_p,std_p,repeats_used,failed_repeats\n";
  for (const int digit : opt.digits) {
    std::vector<double> p_gte;
    std::vector<double> p_cum;
    long failed = 0;
    std::string last_error;
    for (long repeat = 0; repeat < opt.repeats; ++repeat) {
      const DataMatrix subset = digit_subset(
          set, digit, opt.samples, stream_seed(opt.seed, digit, 0, repeat));
      try {
        const Spectrum spectrum =
            mnist_spectrum(opt.method, set, opt, digit, repeat, subset);
        const auto [gte, cum] =
            estimate_all(spectrum, opt.threshold_gte, opt.threshold_cum);
        p_gte.push_back(static_cast<double>(gte.p));
        p_cum.push_back(static_cast<double>(cum.p));
      } catch (const NumericError& e) {
        ++failed;
        last_error = e.what();
      }
    }
    const Stats gte_stats = summarize(p_gte);
    const Stats cum_stats = summarize(p_cum);
    const struct {
      const char* rule;
      double threshold;
      const Stats& stats;
    } rows[2] = {{"gte_fraction", opt.threshold_gte, gte_stats},
                 {"cumulative_energy", opt.threshold_cum, cum_stats}};
    for (const auto& r : rows) {
      csv << digit << "," << opt.method << "," << r.rule << ","
          << fmt_double(r.threshold) << "," << fmt_double(r.stats.mean) << ","
          << fmt_double(r.stats.stddev) << "," << r.stats.used << "," << failed
          << "\n";
      std::map<std::string, std::string> row;
      row["digit"] = std::to_string(digit);
      row["method"] = opt.method;
      row["rule"] = r.rule;
      row["threshold"] = fmt_double(r.threshold);
      row["mean_p"] = fmt_double(r.stats.mean);
      row["std_p"] = fmt_double(r.stats.stddev);
      row["repeats_used"] = std::to_string(r.stats.used);
      row["failed_repeats"] = std::to_string(failed);
      if (failed > 0) row["last_error"] = last_error;
      report.results.push_back(std::move(row));
    }
  }
  write_text_file(opt.out_path, csv.str());
  report.wall_time_seconds = watch.seconds();
  write_report(report, opt.out_path);
  return report;
}

RunReport cmd_width_sweep(const WidthSweepOptions& opt) {
  Stopwatch watch;
  if (opt.widths.empty()) {
    throw ArgumentError("at least one width is required");
  }
  if (opt.repeats < 1) {
    throw ArgumentError("repeats must be positive");
  }
  RunReport report;
  report.command = "width-sweep";
  put_mnist_params(report.params, opt.mnist);
  put_ae_params(report.params, opt.ae);
  report.params["digit"] = std::to_string(opt.digit);
  std::ostringstream widths_text;
  for (std::size_t i = 0; i < opt.widths.size(); ++i) {
    if (i) widths_text << ",";
    widths_text << opt.widths[i];
  }
  report.params["widths"] = widths_text.str();
  report.params["repeats"] = std::to_string(opt.repeats);
  report.params["seed"] = std::to_string(opt.seed);
  report.params["threshold_gte"] = fmt_double(opt.threshold_gte);
  report.params["threshold_cum"] = fmt_double(opt.threshold_cum);
  report.params["out"] = opt.out_path;

  const MnistSet set = load_mnist_idx(opt.mnist.images_path, opt.mnist.labels_path);

  std::ostringstream csv;
  csv << "width,rule,threshold,mean_p,std_p,repeats_used,failed_repeats\n";
  for (const Eigen::Index width : opt.widths) {
    std::vector<double> p_gte;
    std::vector<double> p_cum;
    long failed = 0;
    std::string last_error;
    for (long repeat = 0; repeat < opt.repeats; ++repeat) {
      const DataMatrix subset = digit_subset(
          set, opt.digit, width, stream_seed(opt.seed, width, 0, repeat));
      try {
        const AeConfig config =
            configure_ae(mnist_ae_config(), opt.ae,
                         stream_seed(opt.seed, width, 1, repeat));
        const AeModel model = train(config, subset);
        const Spectrum spectrum = to_svp(hidden_activations(model, subset));
        const auto [gte, cum] =
            estimate_all(spectrum, opt.threshold_gte, opt.threshold_cum);
        p_gte.push_back(static_cast<double>(gte.p));
        p_cum.push_back(static_cast<double>(cum.p));
      } catch (const NumericError& e) {
        ++failed;
        last_error = e.what();
      }
    }
    const Stats gte_stats = summarize(p_gte);
    const Stats cum_stats = summarize(p_cum);
    const struct {
      const char* rule;
      double threshold;
      const Stats& stats;
    } rows[2] = {{"gte_fraction", opt.threshold_gte, gte_stats},
                 {"cumulative_energy", opt.threshold_cum, cum_stats}};
    for (const auto& r : rows) {
      csv << width << "," << r.rule << "," << fmt_double(r.threshold) << ","
          << fmt_double(r.stats.mean) << "," << fmt_double(r.stats.stddev)
          << "," << r.stats.used << "," << failed << "\n";
      std::map<std::string, std::string> row;
      row["width"] = std::to_string(width);
      row["rule"] = r.rule;
      row["threshold"] = fmt_double(r.threshold);
      row["mean_p"] = fmt_double(r.stats.mean);
      row["std_p"] = fmt_double(r.stats.stddev);
      row["repeats_used"] = std::to_string(r.stats.used);
      row["failed_repeats"] = std::to_string(failed);
      if (failed > 0) row["last_error"] = last_error;
      report.results.push_back(std::move(row));
    }
  }
  write_text_file(opt.out_path, csv.str());
  report.wall_time_seconds = watch.seconds();
  write_report(report, opt.out_path);
  return report;
}

RunReport cmd_lambda_sweep(const LambdaSweepOptions& opt) {
  Stopwatch watch;
  if (opt.lambdas.empty()) {
    throw ArgumentError("at least one lambda is required");
  }
  for (const double lambda : opt.lambdas) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
      throw ArgumentError("lambda values must be finite and non-negative");
    }
  }
  RunReport report;
  report.command = "lambda-sweep";
  put_mnist_params(report.params, opt.mnist);
  put_ae_params(report.params, opt.ae);
  std::ostringstream lambdas_text;
  for (std::size_t i = 0; i < opt.lambdas.size(); ++i) {
    if (i) lambdas_text << ",";
    lambdas_text << fmt_double(opt.lambdas[i]);
  }
  report.params["lambdas"] = lambdas_text.str();
  report.params["digit"] = std::to_string(opt.digit);
  report.params["samples"] = std::to_string(opt.samples);
  report.params["seed"] = std::to_string(opt.seed);
  report.params["threshold_gte"] = fmt_double(opt.threshold_gte);
  report.params["threshold_cum"] = fmt_double(opt.threshold_cum);
  report.params["out"] = opt.out_path;

  const MnistSet set = load_mnist_idx(opt.mnist.images_path, opt.mnist.labels_path);
  // one subset and one init seed shared by every lambda
  const DataMatrix subset = digit_subset(
      set, opt.digit, opt.samples, stream_seed(opt.seed, opt.digit, 0, 0));
  const std::uint64_t train_seed = stream_seed(opt.seed, opt.digit, 1, 0);

  std::ostringstream lines;
  for (const double lambda : opt.lambdas) {
    AeOptions ae = opt.ae;
    ae.lambda = lambda;
    json line;
    line["lambda"] = lambda;
    try {
      const AeConfig config =
          configure_ae(mnist_ae_config(), ae, train_seed);
      const AeModel model = train(config, subset);
      const Spectrum spectrum = to_svp(hidden_activations(model, subset));
      const auto [gte, cum] =
          estimate_all(spectrum, opt.threshold_gte, opt.threshold_cum);
      line["spectrum"] = std::vector<double>(
          spectrum.values().data(),
          spectrum.values().data() + spectrum.values().size());
      line["p_gte"] = static_cast<long>(gte.p);
      line["p_cumulative"] = static_cast<long>(cum.p);
      line["threshold_gte"] = opt.threshold_gte;
      line["threshold_cum"] = opt.threshold_cum;
    } catch (const NumericError& e) {
      line["error"] = e.what();
    }
    lines << line.dump() << "\n";
    std::map<std::string, std::string> row;
    row["lambda"] = fmt_double(lambda);
    if (line.contains("error")) {
      row["error"] = line["error"].get<std::string>();
    } else {
      row["p_gte"] = std::to_string(line["p_gte"].get<long>());
      row["p_cumulative"] = std::to_string(line["p_cumulative"].get<long>());
    }
    report.results.push_back(std::move(row));
  }
  write_text_file(opt.out_path, lines.str());
  report.wall_time_seconds = watch.seconds();
  write_report(report, opt.out_path);
  return report;
}

RunReport cmd_de_timeseries(const DeTimeseriesOptions& opt) {
  Stopwatch watch;
  if (opt.methods.empty()) {
    throw ArgumentError("at least one method is required");
  }
  for (const std::string& method : opt.methods) {
    check_method(method);
  }
  RunReport report;
  report.command = "de-timeseries";
  put_ae_params(report.params, opt.ae);
  report.params["prices"] = opt.prices_path;
  std::ostringstream methods_text;
  for (std::size_t i = 0; i < opt.methods.size(); ++i) {
    if (i) methods_text << ",";
    methods_text << opt.methods[i];
  }
  report.params["methods"] = methods_text.str();
  report.params["window"] = std::to_string(opt.window);
  report.params["stride"] = std::to_string(opt.stride);
  report.params["seed"] = std::to_string(opt.seed);
  report.params["threshold_gte"] = fmt_double(opt.threshold_gte);
  report.params["threshold_cum"] = fmt_double(opt.threshold_cum);
  report.params["neighbors"] = std::to_string(opt.neighbors);
  report.params["center"] = opt.center ? "true" : "false";
  report.params["out"] = opt.out_path;

  const ReturnsPanel panel = load_prices_csv(opt.prices_path);
  const std::vector<ReturnWindow> windows =
      sliding_windows(panel, WindowSpec{opt.window, opt.stride});

  std::ostringstream lines;
  for (std::size_t wi = 0; wi < windows.size(); ++wi) {
    const ReturnWindow& window = windows[wi];
    for (std::size_t mi = 0; mi < opt.methods.size(); ++mi) {
      const std::string& method = opt.methods[mi];
      try {
        Spectrum spectrum = [&]() -> Spectrum {
          if (method == "pca") {
            return fit_pca(window.returns, opt.center).spectrum();
          }
          if (method == "isomap") {
            return isomap_embed(window.returns, opt.neighbors, 1).spectrum;
          }
          const AeConfig config = configure_ae(
              returns_ae_config(window.returns.cols()), opt.ae,
              derive_seed(opt.seed, mi, wi));
          const AeModel model = train(config, window.returns);
          return to_svp(hidden_activations(model, window.returns));
        }();
        const auto [gte, cum] =
            estimate_all(spectrum, opt.threshold_gte, opt.threshold_cum);
        for (const DimensionEstimate& estimate : {gte, cum}) {
          json line;
          line["end_date"] = window.end_date;
          line["method"] = method;
          line["rule"] = to_string(estimate.rule);
          line["threshold"] = estimate.threshold;
          line["p"] = static_cast<long>(estimate.p);
          lines << line.dump() << "\n";
          std::map<std::string, std::string> row;
          row["end_date"] = window.end_date;
          row["method"] = method;
          row["rule"] = to_string(estimate.rule);
          row["threshold"] = fmt_double(estimate.threshold);
          row["p"] = std::to_string(estimate.p);
          report.results.push_back(std::move(row));
        }
      } catch (const NumericError& e) {
        json line;
        line["end_date"] = window.end_date;
        line["method"] = method;
        line["error"] = e.what();
        lines << line.dump() << "\n";
        std::map<std::string, std::string> row;
        row["end_date"] = window.end_date;
        row["method"] = method;
        row["error"] = e.what();
        report.results.push_back(std::move(row));
      }
    }
  }
  write_text_file(opt.out_path, lines.str());
  report.wall_time_seconds = watch.seconds();
  write_report(report, opt.out_path);
  return report;
}

}  // namespace dimest
