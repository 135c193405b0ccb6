#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nplic/dataset.hpp"
#include "nplic/geometry.hpp"

namespace nplic {

// Feature rows per mesh family (scaled): (alpha, theta), (alpha, phi, theta),
// plus the mesh flag m for the combined networks.
enum class InputLayout { Single2D, Single3D, Combined2D, Combined3D };

int input_dim(InputLayout layout);
const char* layout_name(InputLayout layout);

struct ScalePair {
  double offset = 0.0;
  double scale = 1.0;  // scaled feature = (raw - offset) * scale
};

struct NetworkConfig {
  InputLayout layout = InputLayout::Single2D;
  std::vector<MeshType> meshes;  // one entry, or simplex+rect for combined
  int hidden_units = 48;
  std::vector<ScalePair> input_scaling;  // one per feature
};

// Canonical config for a dataset tag ("square", ..., "t-s", "t-c").
NetworkConfig make_config(const std::string& dataset_tag, int hidden_units);

struct Provenance {
  std::uint64_t seed = 0;
  long epochs_run = 0;
  double final_val_mse = 0.0;
};

// One hidden layer, ReLU, scalar linear output.
struct MlpModel {
  NetworkConfig config;
  std::vector<double> w1;  // hidden_units x d, row major
  std::vector<double> b1;  // hidden_units
  std::vector<double> w2;  // hidden_units
  double b2 = 0.0;
  Provenance provenance;
};

struct TrainConfig {
  double learning_rate = 1e-4;
  int batch_size = 8192;
  long max_epochs = 100000;
  double val_tolerance = 5e-5;  // stop when full-validation MSE drops below
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
};

enum class StopReason { Tolerance, MaxEpochs };

struct TrainHistory {
  std::vector<std::pair<double, double>> epochs;  // (train_mse, val_mse)
  StopReason stop_reason = StopReason::MaxEpochs;
  long best_epoch = 0;  // 1-based epoch whose weights were returned
};

MlpModel init_model(const NetworkConfig& config, std::uint64_t seed);

// x: rows x d row major. Row-wise independent.
std::vector<double> forward(const MlpModel& model, std::span<const double> x, std::size_t rows);
double forward_one(const MlpModel& model, std::span<const double> x);

// Mean-squared-error gradients for one batch, exact closed-form backprop.
struct Gradients {
  std::vector<double> w1, b1, w2;
  double b2 = 0.0;
};
Gradients backprop(const MlpModel& model, std::span<const double> x,
                   std::span<const double> y, std::size_t rows);
double batch_mse(const MlpModel& model, std::span<const double> x, std::span<const double> y,
                 std::size_t rows);

// Adam over a flat parameter vector; step count starts at 1 (bias-corrected).
class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t n_params, double lr, double beta1, double beta2, double eps);
  void step(std::span<double> params, std::span<const double> grads);
  long steps_taken() const { return t_; }

 private:
  std::vector<double> m_, v_;
  double lr_, beta1_, beta2_, eps_;
  long t_ = 0;
};

// Scaled feature row for one record (layout must cover the record's mesh).
std::vector<double> feature_row(const NetworkConfig& config, const SampleRecord& r);

struct TrainResult {
  MlpModel model;  // weights of the best-validation epoch
  TrainHistory history;
};

// Minibatch Adam on mean squared error; per-epoch shuffle reseeded from
// tc.seed; stops on val_tolerance or max_epochs. Throws on non-finite loss.
TrainResult train(MlpModel model, const SplitDataset& split, const TrainConfig& tc);

// (mse, mae) over the given records
std::pair<double, double> evaluate(const MlpModel& model, const Dataset& test);

// (C_predicted, C_true) pairs, seeded subsample of at most max_points
std::vector<std::pair<double, double>> predict_scatter(const MlpModel& model,
                                                       const Dataset& test,
                                                       std::size_t max_points = 100,
                                                       std::uint64_t seed = 0);

// The sampling grids cover only the n_y >= 0 hemisphere of orientations, so
// inference folds arbitrary normals into that domain through a symmetry of
// the canonical cell: an axis reflection for square/cube, a coordinate
// permutation or vertex-swap map for the simplices. C unfolds exactly via
// C = scale * C_folded + offset.
struct FoldedQuery {
  Vec3 n;
  double scale = 1.0;
  double offset = 0.0;
};
FoldedQuery fold_query(MeshType mesh, Vec3 n);

struct ModelBank {
  std::vector<MlpModel> models;
  void add(MlpModel model) { models.push_back(std::move(model)); }
  const MlpModel* find(MeshType mesh) const;
};

bool covers(const NetworkConfig& config, MeshType mesh);

double nplic_solve(const MlpModel& model, MeshType mesh, Vec3 n, double alpha0);
double nplic_solve(const ModelBank& bank, MeshType mesh, Vec3 n, double alpha0);
// Batched variant: one forward pass over all queries.
std::vector<double> nplic_solve_batch(const MlpModel& model, MeshType mesh,
                                      std::span<const Vec3> normals,
                                      std::span<const double> alphas);

void save_model(const MlpModel& model, std::ostream& out);
void save_model(const MlpModel& model, const std::string& path);
MlpModel load_model(std::istream& in);
MlpModel load_model(const std::string& path);

}  // namespace nplic
