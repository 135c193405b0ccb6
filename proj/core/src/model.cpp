#include "nplic/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "nplic/rng.hpp"
#include "nplic/text_io.hpp"

namespace nplic {

namespace {

constexpr double kAlphaSnap = 1e-15;
constexpr double kPoleTol = 1e-12;
constexpr std::string_view kSignTag = "alpha-side-nonpositive";  // alpha counts n.x + C <= 0

std::size_t param_count(const MlpModel& m) {
  return m.w1.size() + m.b1.size() + m.w2.size() + 1;
}

void flatten(const MlpModel& m, std::vector<double>& out) {
  out.clear();
  out.reserve(param_count(m));
  out.insert(out.end(), m.w1.begin(), m.w1.end());
  out.insert(out.end(), m.b1.begin(), m.b1.end());
  out.insert(out.end(), m.w2.begin(), m.w2.end());
  out.push_back(m.b2);
}

void unflatten(std::span<const double> flat, MlpModel& m) {
  auto it = flat.begin();
  std::copy(it, it + m.w1.size(), m.w1.begin());
  it += m.w1.size();
  std::copy(it, it + m.b1.size(), m.b1.begin());
  it += m.b1.size();
  std::copy(it, it + m.w2.size(), m.w2.begin());
  it += m.w2.size();
  m.b2 = *it;
}

void flatten_grads(const Gradients& g, std::vector<double>& out) {
  out.clear();
  out.reserve(g.w1.size() + g.b1.size() + g.w2.size() + 1);
  out.insert(out.end(), g.w1.begin(), g.w1.end());
  out.insert(out.end(), g.b1.begin(), g.b1.end());
  out.insert(out.end(), g.w2.begin(), g.w2.end());
  out.push_back(g.b2);
}

std::string config_tag(const NetworkConfig& c) {
  if (c.layout == InputLayout::Combined2D) return "t-s";
  if (c.layout == InputLayout::Combined3D) return "t-c";
  return mesh_name(c.meshes.at(0));
}

// raw features in layout order before scaling
void raw_features(InputLayout layout, double alpha, double theta, double phi, int m_flag,
                  double* out) {
  switch (layout) {
    case InputLayout::Single2D:
      out[0] = alpha;
      out[1] = theta;
      break;
    case InputLayout::Single3D:
      out[0] = alpha;
      out[1] = phi;
      out[2] = theta;
      break;
    case InputLayout::Combined2D:
      out[0] = alpha;
      out[1] = theta;
      out[2] = m_flag;
      break;
    default:
      out[0] = alpha;
      out[1] = phi;
      out[2] = theta;
      out[3] = m_flag;
      break;
  }
}

void scale_row(const NetworkConfig& c, double* row) {
  for (std::size_t i = 0; i < c.input_scaling.size(); ++i)
    row[i] = (row[i] - c.input_scaling[i].offset) * c.input_scaling[i].scale;
}

std::vector<double> dataset_features(const NetworkConfig& c, const Dataset& ds) {
  const int d = input_dim(c.layout);
  std::vector<double> x(ds.records.size() * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const std::vector<double> row = feature_row(c, ds.records[i]);
    std::copy(row.begin(), row.end(), x.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  return x;
}

std::vector<double> dataset_labels(const Dataset& ds) {
  std::vector<double> y(ds.records.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i) y[i] = ds.records[i].c;
  return y;
}

double inference_phi(MeshType mesh, Vec3 n, const Angles& a) {
  if (dimension(mesh) == 2) return 0.0;
  // phi is undefined at the poles; park it mid-domain instead of at the 2pi
  // convention value, which lies outside the sampled range
  if (std::abs(std::sin(a.theta)) < kPoleTol) return std::numbers::pi;
  (void)n;
  return a.phi.value();
}

}  // namespace

int input_dim(InputLayout layout) {
  switch (layout) {
    case InputLayout::Single2D: return 2;
    case InputLayout::Single3D: return 3;
    case InputLayout::Combined2D: return 3;
    default: return 4;
  }
}

const char* layout_name(InputLayout layout) {
  switch (layout) {
    case InputLayout::Single2D: return "2d-single";
    case InputLayout::Single3D: return "3d-single";
    case InputLayout::Combined2D: return "2d-combined";
    default: return "3d-combined";
  }
}

NetworkConfig make_config(const std::string& dataset_tag, int hidden_units) {
  NetworkConfig c;
  c.hidden_units = hidden_units;
  if (dataset_tag == "t-s") {
    c.layout = InputLayout::Combined2D;
    c.meshes = {MeshType::Triangle, MeshType::Square};
  } else if (dataset_tag == "t-c") {
    c.layout = InputLayout::Combined3D;
    c.meshes = {MeshType::Tetrahedron, MeshType::Cube};
  } else {
    const auto mesh = mesh_from_name(dataset_tag);
    if (!mesh) throw std::invalid_argument("unknown dataset tag '" + dataset_tag + "'");
    c.meshes = {*mesh};
    c.layout = dimension(*mesh) == 2 ? InputLayout::Single2D : InputLayout::Single3D;
  }
  const ScalePair alpha_scale{0.0, 1.0};
  const ScalePair theta_scale{0.0, 1.0 / std::numbers::pi};
  const ScalePair phi_scale{0.0, 1.0 / (2.0 * std::numbers::pi)};
  const ScalePair m_scale{0.0, 1.0};
  switch (c.layout) {
    case InputLayout::Single2D: c.input_scaling = {alpha_scale, theta_scale}; break;
    case InputLayout::Single3D: c.input_scaling = {alpha_scale, phi_scale, theta_scale}; break;
    case InputLayout::Combined2D:
      c.input_scaling = {alpha_scale, theta_scale, m_scale};
      break;
    default:
      c.input_scaling = {alpha_scale, phi_scale, theta_scale, m_scale};
      break;
  }
  return c;
}

MlpModel init_model(const NetworkConfig& config, std::uint64_t seed) {
  if (config.input_scaling.size() != static_cast<std::size_t>(input_dim(config.layout)))
    throw std::invalid_argument("input scaling size does not match layout");
  const int d = input_dim(config.layout);
  const int n = config.hidden_units;
  if (n < 1) throw std::invalid_argument("hidden_units must be positive");

  MlpModel m;
  m.config = config;
  m.w1.resize(static_cast<std::size_t>(n) * d);
  m.b1.resize(n);
  m.w2.resize(n);
  m.provenance.seed = seed;

  // He-uniform weights, uniform(+-1/sqrt(fan_in)) biases so the ReLU hinges
  // start spread across the scaled input box; draw order w1, b1, w2, b2
  SplitMix64 rng(seed);
  const double wlim1 = std::sqrt(6.0 / static_cast<double>(d));
  const double wlim2 = std::sqrt(6.0 / static_cast<double>(n));
  const double blim1 = 1.0 / std::sqrt(static_cast<double>(d));
  const double blim2 = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& w : m.w1) w = rng.uniform(-wlim1, wlim1);
  for (double& b : m.b1) b = rng.uniform(-blim1, blim1);
  for (double& w : m.w2) w = rng.uniform(-wlim2, wlim2);
  m.b2 = rng.uniform(-blim2, blim2);
  return m;
}

std::vector<double> forward(const MlpModel& model, std::span<const double> x, std::size_t rows) {
  const std::size_t d = static_cast<std::size_t>(input_dim(model.config.layout));
  const std::size_t n = model.w2.size();
  if (x.size() != rows * d) throw std::invalid_argument("feature width mismatch");
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* xr = x.data() + r * d;
    double acc = model.b2;
    for (std::size_t j = 0; j < n; ++j) {
      double z = model.b1[j];
      const double* wj = model.w1.data() + j * d;
      for (std::size_t k = 0; k < d; ++k) z += wj[k] * xr[k];
      if (z > 0.0) acc += model.w2[j] * z;
    }
    out[r] = acc;
  }
  return out;
}

double forward_one(const MlpModel& model, std::span<const double> x) {
  return forward(model, x, 1)[0];
}

double batch_mse(const MlpModel& model, std::span<const double> x, std::span<const double> y,
                 std::size_t rows) {
  const std::vector<double> pred = forward(model, x, rows);
  double acc = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double r = pred[i] - y[i];
    acc += r * r;
  }
  return acc / static_cast<double>(rows);
}

Gradients backprop(const MlpModel& model, std::span<const double> x, std::span<const double> y,
                   std::size_t rows) {
  const std::size_t d = static_cast<std::size_t>(input_dim(model.config.layout));
  const std::size_t n = model.w2.size();
  if (x.size() != rows * d || y.size() != rows)
    throw std::invalid_argument("feature width mismatch");

  Gradients g;
  g.w1.assign(n * d, 0.0);
  g.b1.assign(n, 0.0);
  g.w2.assign(n, 0.0);
  g.b2 = 0.0;

  std::vector<double> z(n);
  const double inv_rows = 1.0 / static_cast<double>(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* xr = x.data() + r * d;
    double pred = model.b2;
    for (std::size_t j = 0; j < n; ++j) {
      double zj = model.b1[j];
      const double* wj = model.w1.data() + j * d;
      for (std::size_t k = 0; k < d; ++k) zj += wj[k] * xr[k];
      z[j] = zj;
      if (zj > 0.0) pred += model.w2[j] * zj;
    }
    const double gy = 2.0 * (pred - y[r]) * inv_rows;
    g.b2 += gy;
    for (std::size_t j = 0; j < n; ++j) {
      if (z[j] <= 0.0) continue;  // ReLU subgradient 0 at the kink
      g.w2[j] += gy * z[j];
      const double gz = gy * model.w2[j];
      g.b1[j] += gz;
      double* gw = g.w1.data() + j * d;
      for (std::size_t k = 0; k < d; ++k) gw[k] += gz * xr[k];
    }
  }
  return g;
}

AdamOptimizer::AdamOptimizer(std::size_t n_params, double lr, double beta1, double beta2,
                             double eps)
    : m_(n_params, 0.0), v_(n_params, 0.0), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void AdamOptimizer::step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size())
    throw std::invalid_argument("adam parameter count mismatch");
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i] * grads[i];
    params[i] -= lr_ * (m_[i] / bc1) / (std::sqrt(v_[i] / bc2) + eps_);
  }
}

std::vector<double> feature_row(const NetworkConfig& config, const SampleRecord& r) {
  if (!covers(config, r.mesh_type))
    throw std::invalid_argument(std::string("record mesh ") + mesh_name(r.mesh_type) +
                                " not covered by model config " + config_tag(config));
  std::vector<double> row(static_cast<std::size_t>(input_dim(config.layout)));
  raw_features(config.layout, r.alpha0, r.theta, r.phi.value_or(0.0), r.m, row.data());
  scale_row(config, row.data());
  return row;
}

TrainResult train(MlpModel model, const SplitDataset& split, const TrainConfig& tc) {
  if (split.train.records.empty() || split.validation.records.empty())
    throw std::invalid_argument("train and validation partitions must be nonempty");
  if (tc.batch_size < 1) throw std::invalid_argument("batch_size must be positive");

  const std::size_t d = static_cast<std::size_t>(input_dim(model.config.layout));
  const std::vector<double> xtr = dataset_features(model.config, split.train);
  const std::vector<double> ytr = dataset_labels(split.train);
  const std::vector<double> xva = dataset_features(model.config, split.validation);
  const std::vector<double> yva = dataset_labels(split.validation);
  const std::size_t ntr = ytr.size();
  const std::size_t nva = yva.size();

  std::vector<double> params;
  flatten(model, params);
  AdamOptimizer adam(params.size(), tc.learning_rate, tc.beta1, tc.beta2, tc.adam_eps);

  std::vector<std::size_t> order(ntr);
  for (std::size_t i = 0; i < ntr; ++i) order[i] = i;
  std::vector<double> xb(static_cast<std::size_t>(tc.batch_size) * d);
  std::vector<double> yb(tc.batch_size);
  std::vector<double> flat_grads;

  TrainHistory history;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> best_params = params;
  long epochs_run = 0;

  for (long epoch = 1; epoch <= tc.max_epochs; ++epoch) {
    epochs_run = epoch;
    SplitMix64 shuffle_rng(derive_seed(tc.seed, "shuffle:" + std::to_string(epoch)));
    fisher_yates(order, shuffle_rng);

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < ntr; start += static_cast<std::size_t>(tc.batch_size)) {
      const std::size_t rows = std::min<std::size_t>(tc.batch_size, ntr - start);
      for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t src = order[start + i];
        std::copy_n(xtr.begin() + static_cast<std::ptrdiff_t>(src * d), d,
                    xb.begin() + static_cast<std::ptrdiff_t>(i * d));
        yb[i] = ytr[src];
      }
      const std::span<const double> xs(xb.data(), rows * d);
      const std::span<const double> ys(yb.data(), rows);
      const double loss = batch_mse(model, xs, ys, rows);
      if (!std::isfinite(loss))
        throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                 std::to_string(epoch));
      epoch_loss += loss * static_cast<double>(rows);
      const Gradients g = backprop(model, xs, ys, rows);
      flatten_grads(g, flat_grads);
      adam.step(params, flat_grads);
      unflatten(params, model);
    }

    const double train_mse = epoch_loss / static_cast<double>(ntr);
    const double val_mse = batch_mse(model, xva, yva, nva);
    history.epochs.emplace_back(train_mse, val_mse);
    if (val_mse < best_val) {
      best_val = val_mse;
      best_params = params;
      history.best_epoch = epoch;
    }
    if (val_mse < tc.val_tolerance) {
      history.stop_reason = StopReason::Tolerance;
      break;
    }
    history.stop_reason = StopReason::MaxEpochs;
  }

  unflatten(best_params, model);
  model.provenance = {tc.seed, epochs_run, best_val};
  return {std::move(model), std::move(history)};
}

std::pair<double, double> evaluate(const MlpModel& model, const Dataset& test) {
  if (test.records.empty()) throw std::invalid_argument("evaluate needs a nonempty dataset");
  const std::vector<double> x = dataset_features(model.config, test);
  const std::vector<double> y = dataset_labels(test);
  const std::vector<double> pred = forward(model, x, y.size());
  double mse = 0.0, mae = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = pred[i] - y[i];
    mse += r * r;
    mae += std::abs(r);
  }
  const double inv = 1.0 / static_cast<double>(y.size());
  return {mse * inv, mae * inv};
}

std::vector<std::pair<double, double>> predict_scatter(const MlpModel& model,
                                                       const Dataset& test,
                                                       std::size_t max_points,
                                                       std::uint64_t seed) {
  if (test.records.empty()) throw std::invalid_argument("predict_scatter needs data");
  std::vector<std::size_t> idx(test.records.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (idx.size() > max_points) {
    SplitMix64 rng(derive_seed(seed, "scatter"));
    fisher_yates(idx, rng);
    idx.resize(max_points);
  }
  const std::vector<double> x = dataset_features(model.config, test);
  const std::vector<double> pred = forward(model, x, test.records.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.emplace_back(pred[i], test.records[i].c);
  return out;
}

FoldedQuery fold_query(MeshType mesh, Vec3 n) {
  switch (mesh) {
    case MeshType::Square: {
      if (n.y < 0.0) return {{n.x, -n.y, 0.0}, 1.0, -n.y};
      return {n, 1.0, 0.0};
    }
    case MeshType::Cube: {
      double offset = 0.0;
      if (n.y < 0.0) {
        offset += -n.y;
        n.y = -n.y;
      }
      if (n.y == 0.0 && n.x > 0.0) {
        offset += n.x;
        n.x = -n.x;
      }
      return {n, 1.0, offset};
    }
    case MeshType::Triangle: {
      if (n.y >= 0.0) return {n, 1.0, 0.0};
      if (n.x >= 0.0) return {{n.y, n.x, 0.0}, 1.0, 0.0};  // x<->y permutation
      // vertex swap P1<->P2 (x' = 1-x-y) then x<->y permutation
      const Vec3 m{n.y - n.x, -n.x, 0.0};
      const double s = norm(m);
      return {{m.x / s, m.y / s, 0.0}, s, -n.x};
    }
    default: {
      if (std::abs(std::abs(n.z) - 1.0) < kPoleTol) return {n, 1.0, 0.0};
      if (n.y > 0.0 || (n.y == 0.0 && n.x <= 0.0)) return {n, 1.0, 0.0};
      if (n.x >= 0.0 && n.x >= n.z) return {{n.y, n.x, n.z}, 1.0, 0.0};
      if (n.z >= 0.0) return {{n.x, n.z, n.y}, 1.0, 0.0};
      // all components negative: vertex swap P1<->P2, then move -n.x to y
      const Vec3 m{n.y - n.x, -n.x, n.z - n.x};
      const double s = norm(m);
      return {{m.x / s, m.y / s, m.z / s}, s, -n.x};
    }
  }
}

const MlpModel* ModelBank::find(MeshType mesh) const {
  for (const MlpModel& m : models)
    if (covers(m.config, mesh)) return &m;
  return nullptr;
}

bool covers(const NetworkConfig& config, MeshType mesh) {
  return std::find(config.meshes.begin(), config.meshes.end(), mesh) != config.meshes.end();
}

double nplic_solve(const MlpModel& model, MeshType mesh, Vec3 n, double alpha0) {
  const Vec3 normals[1] = {n};
  const double alphas[1] = {alpha0};
  return nplic_solve_batch(model, mesh, normals, alphas)[0];
}

double nplic_solve(const ModelBank& bank, MeshType mesh, Vec3 n, double alpha0) {
  const MlpModel* m = bank.find(mesh);
  if (!m)
    throw std::invalid_argument(std::string("no model covering mesh ") + mesh_name(mesh));
  return nplic_solve(*m, mesh, n, alpha0);
}

std::vector<double> nplic_solve_batch(const MlpModel& model, MeshType mesh,
                                      std::span<const Vec3> normals,
                                      std::span<const double> alphas) {
  if (!covers(model.config, mesh))
    throw std::invalid_argument(std::string("model does not cover mesh ") + mesh_name(mesh));
  if (normals.size() != alphas.size())
    throw std::invalid_argument("normals/alphas size mismatch");
  const std::size_t rows = normals.size();
  const std::size_t d = static_cast<std::size_t>(input_dim(model.config.layout));
  const int dim = dimension(mesh);
  const int m_flag = is_simplex(mesh) ? 1 : 0;

  std::vector<FoldedQuery> folds(rows);
  std::vector<double> x(rows * d);
  for (std::size_t i = 0; i < rows; ++i) {
    folds[i] = fold_query(mesh, normals[i]);
    const Angles a = normal_to_angles(folds[i].n, dim);
    double* row = x.data() + i * d;
    raw_features(model.config.layout, alphas[i], a.theta, inference_phi(mesh, folds[i].n, a),
                 m_flag, row);
    scale_row(model.config, row);
  }
  std::vector<double> out = forward(model, x, rows);
  const Cell cell = canonical_cell(mesh);
  for (std::size_t i = 0; i < rows; ++i) {
    if (alphas[i] <= kAlphaSnap || alphas[i] >= 1.0 - kAlphaSnap) {
      const CBounds b = c_bounds(cell, normals[i]);
      out[i] = alphas[i] <= kAlphaSnap ? b.c_max : b.c_min;
    } else {
      out[i] = folds[i].scale * out[i] + folds[i].offset;
    }
  }
  return out;
}

void save_model(const MlpModel& model, std::ostream& out) {
  const int d = input_dim(model.config.layout);
  out << "nplic-model v1\n";
  out << "layout=" << layout_name(model.config.layout) << " meshes=" << config_tag(model.config)
      << " d=" << d << " n=" << model.config.hidden_units << " sign=" << kSignTag << '\n';
  out << "scaling=";
  for (int i = 0; i < d; ++i) {
    if (i) out << ',';
    out << format_double(model.config.input_scaling[i].offset) << ':'
        << format_double(model.config.input_scaling[i].scale);
  }
  out << '\n';
  out << "provenance seed=" << model.provenance.seed << " epochs=" << model.provenance.epochs_run
      << " val_mse=" << format_double(model.provenance.final_val_mse) << '\n';
  for (int j = 0; j < model.config.hidden_units; ++j) {
    for (int k = 0; k < d; ++k) {
      if (k) out << ' ';
      out << format_double(model.w1[static_cast<std::size_t>(j) * d + k]);
    }
    out << '\n';
  }
  for (int j = 0; j < model.config.hidden_units; ++j)
    out << format_double(model.b1[j]) << (j + 1 < model.config.hidden_units ? ' ' : '\n');
  for (int j = 0; j < model.config.hidden_units; ++j)
    out << format_double(model.w2[j]) << (j + 1 < model.config.hidden_units ? ' ' : '\n');
  out << format_double(model.b2) << '\n';
}

void save_model(const MlpModel& model, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  save_model(model, f);
  if (!f.good()) throw std::runtime_error("write failed for " + path);
}

MlpModel load_model(std::istream& in) {
  auto next_line = [&](const char* what) {
    std::string line;
    if (!std::getline(in, line))
      throw std::runtime_error(std::string("model file truncated, expected ") + what);
    if (line.ends_with('\r')) line.pop_back();
    return line;
  };

  const std::string version = next_line("version line");
  if (version != "nplic-model v1")
    throw std::runtime_error("unsupported model file version '" + version +
                             "'; supported: nplic-model v1");

  const std::string cfg_line = next_line("config line");
  const auto cfg_fields = split_on(cfg_line, ' ');
  if (cfg_fields.size() != 5 || !cfg_fields[0].starts_with("layout=") ||
      !cfg_fields[1].starts_with("meshes=") || !cfg_fields[2].starts_with("d=") ||
      !cfg_fields[3].starts_with("n=") || !cfg_fields[4].starts_with("sign="))
    throw std::runtime_error("model line 2: bad config '" + cfg_line + "'");
  if (cfg_fields[4].substr(5) != kSignTag)
    throw std::runtime_error("model line 2: unknown sign convention '" +
                             std::string(cfg_fields[4].substr(5)) + "'");
  const std::string tag(cfg_fields[1].substr(7));
  const int n = static_cast<int>(parse_long(cfg_fields[3].substr(2), "model line 2"));
  NetworkConfig config = make_config(tag, n);
  const int d = static_cast<int>(parse_long(cfg_fields[2].substr(2), "model line 2"));
  if (d != input_dim(config.layout))
    throw std::runtime_error("model line 2: d does not match layout");
  const std::string layout(cfg_fields[0].substr(7));
  if (layout != layout_name(config.layout))
    throw std::runtime_error("model line 2: layout does not match meshes");

  const std::string scale_line = next_line("scaling line");
  if (!scale_line.starts_with("scaling="))
    throw std::runtime_error("model line 3: missing scaling");
  const auto pairs = split_on(std::string_view(scale_line).substr(8), ',');
  if (pairs.size() != static_cast<std::size_t>(d))
    throw std::runtime_error("model line 3: expected one scaling pair per feature");
  config.input_scaling.clear();
  for (const auto& p : pairs) {
    const auto os = split_on(p, ':');
    if (os.size() != 2) throw std::runtime_error("model line 3: bad pair '" + std::string(p) + "'");
    config.input_scaling.push_back(
        {parse_double(os[0], "model line 3"), parse_double(os[1], "model line 3")});
  }

  const std::string prov_line = next_line("provenance line");
  const auto prov = split_on(prov_line, ' ');
  if (prov.size() != 4 || prov[0] != "provenance" || !prov[1].starts_with("seed=") ||
      !prov[2].starts_with("epochs=") || !prov[3].starts_with("val_mse="))
    throw std::runtime_error("model line 4: bad provenance '" + prov_line + "'");

  MlpModel m;
  m.config = std::move(config);
  m.provenance.seed =
      static_cast<std::uint64_t>(parse_long(prov[1].substr(5), "model line 4"));
  m.provenance.epochs_run = parse_long(prov[2].substr(7), "model line 4");
  m.provenance.final_val_mse = parse_double(prov[3].substr(8), "model line 4");

  auto parse_row = [&](const char* what, std::size_t count) {
    const std::string line = next_line(what);
    const auto fields = split_on(line, ' ');
    if (fields.size() != count)
      throw std::runtime_error(std::string("model file: ") + what + ": expected " +
                               std::to_string(count) + " values");
    std::vector<double> row(count);
    for (std::size_t i = 0; i < count; ++i) row[i] = parse_double(fields[i], what);
    return row;
  };

  m.w1.reserve(static_cast<std::size_t>(n) * d);
  for (int j = 0; j < n; ++j) {
    const auto row = parse_row("w1 row", static_cast<std::size_t>(d));
    m.w1.insert(m.w1.end(), row.begin(), row.end());
  }
  m.b1 = parse_row("b1 row", static_cast<std::size_t>(n));
  m.w2 = parse_row("w2 row", static_cast<std::size_t>(n));
  m.b2 = parse_row("b2 row", 1)[0];
  return m;
}

MlpModel load_model(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  return load_model(f);
}

}  // namespace nplic
