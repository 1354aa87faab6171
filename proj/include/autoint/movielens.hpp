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
#include <string>

#include "autoint/schema.hpp"

namespace autoint::data {

/// The seven MovieLens-1M fields, in heat-map axis order:
/// gender, age, occupation, zipcode, request_time, release_time, genre.
/// request_time is the rating's UTC year-month, release_time the year
/// in the movie title, genre is multi-valued with '|'. The label column is
/// the raw 1..5 rating with the movielens_rating transform.
DatasetSchema movielens_schema();

struct MovieLensConversion {
  std::uint64_t ratings = 0;
  std::string csv_path;
  std::string schema_path;
};

/// Joins ratings.dat, users.dat and movies.dat ("::"-separated) from an
/// ml-1m directory into `<out_dir>/movielens.csv` plus
/// `<out_dir>/movielens.schema.json`.
MovieLensConversion convert_movielens(const std::string& ml_dir, const std::string& out_dir);

}  // namespace autoint::data
