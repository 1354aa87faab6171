/* Copyright 2026 The AutoInt CTR Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "autoint/trainer.hpp"

#include <chrono>
#include <cmath>

#include "autoint/batch_gradient.hpp"
#include "autoint/errors.hpp"
#include "autoint/evaluate.hpp"
#include "autoint/parallel.hpp"
#include "autoint/split.hpp"

namespace autoint::train {

void TrainConfig::validate() const {
  adam.validate();
  if (batch_size == 0) throw ConfigError("batch size must be at least 1");
  if (max_epochs == 0) throw ConfigError("max_epochs must be at least 1");
  if (patience == 0) throw ConfigError("patience must be at least 1");
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"learning_rate", c.adam.learning_rate},
          {"beta1", c.adam.beta1},
          {"beta2", c.adam.beta2},
          {"epsilon", c.adam.epsilon},
          {"batch_size", c.batch_size},
          {"max_epochs", c.max_epochs},
          {"patience", c.patience},
          {"seed", c.seed}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  try {
    c.adam.learning_rate = j.value("learning_rate", c.adam.learning_rate);
    c.adam.beta1 = j.value("beta1", c.adam.beta1);
    c.adam.beta2 = j.value("beta2", c.adam.beta2);
    c.adam.epsilon = j.value("epsilon", c.adam.epsilon);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.max_epochs = j.value("max_epochs", c.max_epochs);
    c.patience = j.value("patience", c.patience);
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad training config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json EpochRecord::to_json() const {
  return {{"epoch", epoch},
          {"train_logloss", train_logloss},
          {"valid_auc", valid_auc},
          {"valid_logloss", valid_logloss},
          {"wall_ms", wall_ms}};
}

std::string_view to_string(TrainStatus s) noexcept {
  switch (s) {
    case TrainStatus::Completed:
      return "completed";
    case TrainStatus::EarlyStopped:
      return "early_stopped";
    case TrainStatus::Diverged:
      return "diverged";
  }
  return "unknown";
}

nlohmann::json TrainReport::to_json() const {
  auto e = nlohmann::json::array();
  for (const auto& r : epochs) e.push_back(r.to_json());
  nlohmann::json j = {{"status", std::string(train::to_string(status))},
                      {"best_epoch", best_epoch},
                      {"epochs", std::move(e)}};
  if (best_epoch > 0) j["best_valid_auc"] = best_valid_auc;
  if (!message.empty()) j["message"] = message;
  return j;
}

EarlyStopping::EarlyStopping(std::size_t patience) : patience_(patience) {
  if (patience == 0) throw ConfigError("patience must be at least 1");
}

bool EarlyStopping::update(std::size_t epoch, double auc) {
  if (auc > best_) {
    best_ = auc;
    best_epoch_ = epoch;
    stale_ = 0;
    return true;
  }
  ++stale_;
  return false;
}

TrainReport fit(model::AutoIntModel& model, std::span<const data::EncodedSample> train,
                std::span<const data::EncodedSample> valid, const TrainConfig& config,
                const EpochCallback& on_epoch) {
  config.validate();
  if (train.empty()) throw DataError("training split is empty");
  if (valid.empty()) throw DataError("validation split is empty");
  for (const auto& s : train) model.layout().validate(s);
  for (const auto& s : valid) model.layout().validate(s);

  TrainReport report;
  EarlyStopping stopper(config.patience);
  AdamState adam(model.params());
  model::ModelParams best = model.params();
  model::ModelParams grads(model.config(), model.layout());
  GradientWorkspace workspace;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t epoch_seed = core::mix_seed(config.seed, epoch);
    const data::BatchSchedule schedule(train.size(), config.batch_size, epoch_seed);

    double loss_sum = 0.0;
    bool diverged = false;
    for (std::size_t b = 0; b < schedule.num_batches(); ++b) {
      const auto idx = schedule.batch(b);
      const double loss =
          batch_gradient(model, train, idx, model::Mode::Train, core::mix_seed(epoch_seed, b),
                         grads, workspace);
      if (!std::isfinite(loss)) {
        report.message = "training loss became non-finite in epoch " + std::to_string(epoch) +
                         ", batch " + std::to_string(b);
        diverged = true;
        break;
      }
      try {
        adam_step(model.params(), grads, adam, config.adam);
      } catch (const NumericError& e) {
        report.message = "epoch " + std::to_string(epoch) + ", batch " + std::to_string(b) +
                         ": " + e.what();
        diverged = true;
        break;
      }
      loss_sum += loss * static_cast<double>(idx.size());
    }
    if (diverged) {
      report.status = TrainStatus::Diverged;
      break;
    }

    const auto eval = metrics::eval_set(valid, model);
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_logloss = loss_sum / static_cast<double>(train.size());
    rec.valid_auc = eval.auc;
    rec.valid_logloss = eval.logloss;
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start)
                      .count();
    report.epochs.push_back(rec);
    if (stopper.update(epoch, eval.auc)) best = model.params();
    if (on_epoch) on_epoch(rec);
    if (stopper.should_stop()) {
      report.status = TrainStatus::EarlyStopped;
      break;
    }
  }

  model.params() = std::move(best);
  report.best_epoch = stopper.best_epoch();
  report.best_valid_auc = stopper.best();
  return report;
}

}  // namespace autoint::train
