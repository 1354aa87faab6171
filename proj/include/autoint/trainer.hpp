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

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "autoint/adam.hpp"
#include "autoint/autoint_model.hpp"

namespace autoint::train {

struct TrainConfig {
  AdamConfig adam;
  std::size_t batch_size = 1024;
  std::size_t max_epochs = 20;
  std::size_t patience = 3;  // epochs without validation-AUC improvement
  std::uint64_t seed = 42;   // shuffling and dropout

  void validate() const;
};

nlohmann::json to_json(const TrainConfig& c);
/// Missing keys keep their defaults.
TrainConfig train_config_from_json(const nlohmann::json& j);

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_logloss = 0.0;
  double valid_auc = 0.0;
  double valid_logloss = 0.0;
  double wall_ms = 0.0;

  nlohmann::json to_json() const;
};

enum class TrainStatus { Completed, EarlyStopped, Diverged };
std::string_view to_string(TrainStatus s) noexcept;

struct TrainReport {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;  // 0 when no epoch finished
  double best_valid_auc = -std::numeric_limits<double>::infinity();
  TrainStatus status = TrainStatus::Completed;
  std::string message;  // divergence diagnostic

  nlohmann::json to_json() const;
};

/// Tracks the best validation AUC; stop once `patience` consecutive epochs
/// fail to improve on it strictly.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience);

  /// Returns true when `auc` is a new best.
  bool update(std::size_t epoch, double auc);
  bool should_stop() const noexcept { return stale_ >= patience_; }
  double best() const noexcept { return best_; }
  std::size_t best_epoch() const noexcept { return best_epoch_; }

 private:
  std::size_t patience_;
  double best_ = -std::numeric_limits<double>::infinity();
  std::size_t best_epoch_ = 0;
  std::size_t stale_ = 0;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Trains with Adam on shuffled mini-batches, evaluating on `valid` after
/// every epoch. On return the model holds the parameters of the best
/// validation epoch (or its initial parameters if training diverged before
/// the first epoch finished). Fully determined by the model's init seed
/// and config.seed.
TrainReport fit(model::AutoIntModel& model, std::span<const data::EncodedSample> train,
                std::span<const data::EncodedSample> valid, const TrainConfig& config,
                const EpochCallback& on_epoch = {});

}  // namespace autoint::train
