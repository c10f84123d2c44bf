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

// Trained alignment models shared across a test binary.

#ifndef SCENESPLAT_TESTS__SUPPORT__MODELS_HPP_
#define SCENESPLAT_TESTS__SUPPORT__MODELS_HPP_

#include "scenesplat/alignment/text_encoder.hpp"
#include "scenesplat/edit/assets.hpp"
#include "scenesplat/edit/edit_engine.hpp"
#include "scenesplat/eval/benchmarks.hpp"

namespace scenesplat::testing
{

struct TrainedFixture
{
  HashingTextEncoder encoder;
  Codebooks books;
  AlignmentModel model;

  TrainedFixture() : books(default_codebooks(encoder)), model(train_default_model(TrainingSetup{}, books)) {}

  QueryModels query_models() const { return {encoder, books, model.projectors, model.config.temperature}; }
  EditModels edit_models() const { return {query_models(), default_asset_bank()}; }
};

inline const TrainedFixture & trained()
{
  static const TrainedFixture f;
  return f;
}

}  // namespace scenesplat::testing

#endif  // SCENESPLAT_TESTS__SUPPORT__MODELS_HPP_
