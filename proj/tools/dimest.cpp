#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dimest/commands.hpp"
#include "dimest/errors.hpp"

namespace {

void add_mnist_flags(CLI::App* cmd, dimest::MnistOptions& mnist) {
  cmd->add_option("--mnist-images", mnist.images_path, "IDX image file")
      ->required();
  cmd->add_option("--mnist-labels", mnist.labels_path, "IDX label file")
      ->required();
}

void add_threshold_flags(CLI::App* cmd, double& gte, double& cum) {
  cmd->add_option("--threshold-gte", gte,
                  "share threshold for the >= rule (default 0.01)");
  cmd->add_option("--threshold-cum", cum,
                  "cumulative share threshold (default 0.90)");
}

void add_ae_flags(CLI::App* cmd, dimest::AeOptions& ae) {
  cmd->add_option("--lambda", ae.lambda, "sparsity weight");
  cmd->add_option("--learning-rate", ae.learning_rate, "SGD learning rate");
  cmd->add_option("--epochs", ae.epochs, "training epochs");
  cmd->add_option("--batch-size", ae.batch_size, "mini-batch size");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Intrinsic dimension estimation: PCA, Isomap, and sparse-autoencoder "
      "singular value proxies"};
  app.require_subcommand(1);

  dimest::PcaScreeOptions scree_opt;
  CLI::App* scree = app.add_subcommand(
      "pca-scree", "Write the normalized-variance scree of a digit subset");
  add_mnist_flags(scree, scree_opt.mnist);
  scree->add_option("--digit", scree_opt.digit, "digit 0..9");
  scree->add_option("--samples", scree_opt.samples, "subset size");
  scree->add_option("--seed", scree_opt.seed, "random seed");
  scree->add_flag("--center", scree_opt.center, "mean-center before the SVD");
  scree->add_option("--out", scree_opt.out_path, "output CSV path")->required();
  scree->callback([&]() { dimest::cmd_pca_scree(scree_opt); });

  dimest::ReconCurveOptions recon_opt;
  CLI::App* recon = app.add_subcommand(
      "recon-curve", "Write the k-truncated reconstruction error curve");
  add_mnist_flags(recon, recon_opt.mnist);
  recon->add_option("--digit", recon_opt.digit, "digit 0..9");
  recon->add_option("--samples", recon_opt.samples, "subset size");
  recon->add_option("--ks", recon_opt.ks,
                    "truncation ranks (default: 1..rank)");
  recon->add_option("--seed", recon_opt.seed, "random seed");
  recon->add_flag("--center", recon_opt.center, "mean-center before the SVD");
  recon->add_option("--out", recon_opt.out_path, "output CSV path")->required();
  recon->callback([&]() { dimest::cmd_recon_curve(recon_opt); });

  dimest::DeMnistOptions de_opt;
  int de_single_digit = -1;
  CLI::App* de = app.add_subcommand(
      "de-mnist", "Estimate per-digit dimension under both threshold rules");
  add_mnist_flags(de, de_opt.mnist);
  de->add_option("--method", de_opt.method, "pca, isomap, or ae");
  de->add_option("--digits", de_opt.digits, "digits to process");
  de->add_option("--digit", de_single_digit, "single digit shorthand");
  de->add_option("--samples", de_opt.samples, "subset size per repeat");
  de->add_option("--repeats", de_opt.repeats, "repeats per digit");
  de->add_option("--seed", de_opt.seed, "random seed");
  add_threshold_flags(de, de_opt.threshold_gte, de_opt.threshold_cum);
  de->add_option("--neighbors", de_opt.neighbors, "Isomap neighbor count");
  add_ae_flags(de, de_opt.ae);
  de->add_flag("--center", de_opt.center, "mean-center before PCA");
  de->add_flag("--holdout", de_opt.holdout,
               "estimate AE dimension on a held-out subset");
  de->add_option("--out", de_opt.out_path, "output CSV path")->required();
  de->callback([&]() {
    if (de_single_digit >= 0) de_opt.digits = {de_single_digit};
    dimest::cmd_de_mnist(de_opt);
  });

  dimest::WidthSweepOptions width_opt;
  CLI::App* width = app.add_subcommand(
      "width-sweep", "AE dimension estimates across subset widths");
  add_mnist_flags(width, width_opt.mnist);
  width->add_option("--digit", width_opt.digit, "digit 0..9");
  width->add_option("--widths", width_opt.widths, "subset widths")->required();
  width->add_option("--repeats", width_opt.repeats, "repeats per width");
  width->add_option("--seed", width_opt.seed, "random seed");
  add_threshold_flags(width, width_opt.threshold_gte, width_opt.threshold_cum);
  add_ae_flags(width, width_opt.ae);
  width->add_option("--out", width_opt.out_path, "output CSV path")->required();
  width->callback([&]() { dimest::cmd_width_sweep(width_opt); });

  dimest::LambdaSweepOptions lambda_opt;
  CLI::App* lambda = app.add_subcommand(
      "lambda-sweep", "SVP spectra and dimensions across sparsity weights");
  add_mnist_flags(lambda, lambda_opt.mnist);
  lambda->add_option("--digit", lambda_opt.digit, "digit 0..9");
  lambda->add_option("--samples", lambda_opt.samples, "subset size");
  lambda->add_option("--lambdas", lambda_opt.lambdas, "sparsity weights")
      ->required();
  lambda->add_option("--seed", lambda_opt.seed, "random seed");
  add_threshold_flags(lambda, lambda_opt.threshold_gte,
                      lambda_opt.threshold_cum);
  add_ae_flags(lambda, lambda_opt.ae);
  lambda->add_option("--out", lambda_opt.out_path, "output JSONL path")
      ->required();
  lambda->callback([&]() { dimest::cmd_lambda_sweep(lambda_opt); });

  dimest::DeTimeseriesOptions ts_opt;
  CLI::App* ts = app.add_subcommand(
      "de-timeseries", "Rolling-window dimension estimates from a price CSV");
  ts->add_option("--prices", ts_opt.prices_path, "price CSV path")->required();
  ts->add_option("--method", ts_opt.methods,
                 "methods to run (repeatable: pca, isomap, ae)");
  ts->add_option("--window", ts_opt.window, "window width in days");
  ts->add_option("--stride", ts_opt.stride, "window stride in days");
  ts->add_option("--seed", ts_opt.seed, "random seed");
  add_threshold_flags(ts, ts_opt.threshold_gte, ts_opt.threshold_cum);
  ts->add_option("--neighbors", ts_opt.neighbors, "Isomap neighbor count");
  add_ae_flags(ts, ts_opt.ae);
  ts->add_flag("--center", ts_opt.center, "mean-center before PCA");
  ts->add_option("--out", ts_opt.out_path, "output JSONL path")->required();
  ts->callback([&]() { dimest::cmd_de_timeseries(ts_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const dimest::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dimest::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
