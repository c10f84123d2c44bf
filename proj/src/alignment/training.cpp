// Copyright 2026 The scenesplat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenesplat/alignment/training.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "scenesplat/common/error.hpp"
#include "scenesplat/common/json_writer.hpp"
#include "scenesplat/common/random.hpp"

namespace scenesplat
{

TrajectoryProjectors initial_projectors(const TrainingConfig & config)
{
  return {
    random_projector(kEmbeddingDim, kEncoderInputDim, config.seed, config.init_scale),
    random_projector(kEmbeddingDim, kEncoderInputDim, config.seed + 1, config.init_scale),
  };
}

namespace
{

struct Family
{
  const char * name;
  Projector * proj;
  const Codebook * motion;
  std::vector<AlignmentExample> examples;
  std::vector<std::size_t> order;
  std::mt19937_64 rng;
};

void check_config(const TrainingConfig & c)
{
  if (!(c.learning_rate >= 0.0) || c.epochs < 0 || c.batch_size < 1 || !(c.temperature > 0.0) ||
      !(c.loss.align >= 0.0) || !(c.loss.commit >= 0.0)) {
    throw Error(ErrorCode::InvalidInput, "invalid training configuration");
  }
}

}  // namespace

TrainingResult train_projectors(
  const std::vector<LabeledTrajectory> & corpus, const Codebooks & books,
  const TrainingConfig & config, std::optional<TrajectoryProjectors> init, Execution exec)
{
  if (corpus.empty()) {
    throw Error(ErrorCode::InvalidInput, "training corpus is empty");
  }
  check_config(config);

  TrainingResult result{init ? std::move(*init) : initial_projectors(config), {}};
  Family families[2] = {
    {"vehicle", &result.projectors.vehicle, &books.vehicle_motion, {}, {}, std::mt19937_64(config.seed)},
    {"pedestrian", &result.projectors.pedestrian, &books.pedestrian_motion, {}, {},
     std::mt19937_64(config.seed + 1)},
  };
  for (const auto & item : corpus) {
    Family & fam = families[item.kind == AgentKind::Pedestrian ? 1 : 0];
    if (item.label.motion >= fam.motion->size() || item.label.location >= books.location.size()) {
      throw Error(ErrorCode::UnknownLabel, "training label outside its codebook");
    }
    fam.examples.push_back({encoder_input(item.features), item.label});
  }
  for (auto & fam : families) {
    fam.order.resize(fam.examples.size());
    std::iota(fam.order.begin(), fam.order.end(), std::size_t{0});
  }

  const double n = static_cast<double>(corpus.size());
  auto mean_loss = [&]() {
    double sum = 0.0;
    for (const auto & fam : families) {
      if (!fam.examples.empty()) {
        sum += total_loss(*fam.proj, fam.examples, *fam.motion, books.location, config.loss, exec);
      }
    }
    return sum / n;
  };
  result.loss_curve.push_back(mean_loss());

  const auto bs = static_cast<std::size_t>(config.batch_size);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (auto & fam : families) {
      if (fam.examples.empty()) continue;
      shuffle(fam.order, fam.rng);
      int step = 0;
      for (std::size_t start = 0; start < fam.order.size(); start += bs, ++step) {
        const std::size_t len = std::min(bs, fam.order.size() - start);
        const std::span<const std::size_t> batch(fam.order.data() + start, len);
        const auto g = batch_loss_gradient(
          *fam.proj, fam.examples, batch, *fam.motion, books.location, config.loss, exec);
        if (!std::isfinite(g.loss_sum) || !g.gradient_sum.is_finite()) {
          throw Error(
            ErrorCode::Divergence, std::string("non-finite loss in ") + fam.name +
                                     " projector at epoch " + std::to_string(epoch) + " step " +
                                     std::to_string(step));
        }
        const double scale = config.learning_rate / static_cast<double>(len);
        for (std::size_t i = 0; i < fam.proj->weights.size(); ++i) {
          fam.proj->weights[i] -= scale * g.gradient_sum.weights[i];
        }
        for (std::size_t i = 0; i < fam.proj->bias.size(); ++i) {
          fam.proj->bias[i] -= scale * g.gradient_sum.bias[i];
        }
      }
    }
    const double loss = mean_loss();
    if (!std::isfinite(loss)) {
      throw Error(
        ErrorCode::Divergence, "non-finite mean loss after epoch " + std::to_string(epoch));
    }
    result.loss_curve.push_back(loss);
  }
  return result;
}

namespace
{

void write_projector(JsonWriter & w, const Projector & p)
{
  w.begin_object();
  w.key("rows").value(static_cast<std::uint64_t>(p.out_dim));
  w.key("cols").value(static_cast<std::uint64_t>(p.in_dim));
  w.key("weights").begin_array();
  for (std::size_t r = 0; r < p.out_dim; ++r) {
    w.numbers(std::span<const double>(p.weights.data() + r * p.in_dim, p.in_dim));
  }
  w.end_array();
  w.key("bias").numbers(p.bias);
  w.end_object();
}

Projector read_projector(const nlohmann::json & j)
{
  Projector p(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto & rows = j.at("weights");
  if (rows.size() != p.out_dim || j.at("bias").size() != p.out_dim) {
    throw Error(ErrorCode::Format, "projector shape does not match its rows/cols");
  }
  for (std::size_t r = 0; r < p.out_dim; ++r) {
    if (rows[r].size() != p.in_dim) {
      throw Error(ErrorCode::Format, "projector row " + std::to_string(r) + " has wrong length");
    }
    for (std::size_t c = 0; c < p.in_dim; ++c) {
      p.w(r, c) = rows[r][c].get<double>();
    }
    p.bias[r] = j.at("bias")[r].get<double>();
  }
  if (!p.is_finite()) {
    throw Error(ErrorCode::Format, "projector contains non-finite entries");
  }
  return p;
}

}  // namespace

std::string serialize_model(const AlignmentModel & model)
{
  const auto & c = model.config;
  JsonWriter w(17);
  w.begin_object();
  w.key("format").value(1);
  w.key("config").begin_object(true);
  w.key("learning_rate").value(c.learning_rate);
  w.key("epochs").value(c.epochs);
  w.key("batch_size").value(c.batch_size);
  w.key("lambda_align").value(c.loss.align);
  w.key("lambda_commit").value(c.loss.commit);
  w.key("temperature").value(c.temperature);
  w.key("seed").value(c.seed);
  w.key("init_scale").value(c.init_scale);
  w.end_object();
  w.key("vehicle");
  write_projector(w, model.projectors.vehicle);
  w.key("pedestrian");
  write_projector(w, model.projectors.pedestrian);
  w.end_object();
  return w.str();
}

AlignmentModel parse_model(std::string_view text)
{
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<int>() != 1) {
      throw Error(ErrorCode::Format, "unsupported model format");
    }
    AlignmentModel m;
    const auto & c = j.at("config");
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.epochs = c.at("epochs").get<int>();
    m.config.batch_size = c.at("batch_size").get<int>();
    m.config.loss.align = c.at("lambda_align").get<double>();
    m.config.loss.commit = c.at("lambda_commit").get<double>();
    m.config.temperature = c.at("temperature").get<double>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.init_scale = c.at("init_scale").get<double>();
    m.projectors.vehicle = read_projector(j.at("vehicle"));
    m.projectors.pedestrian = read_projector(j.at("pedestrian"));
    return m;
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorCode::Format, std::string("model document: ") + e.what());
  }
}

}  // namespace scenesplat
