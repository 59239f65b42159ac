// Copyright 2026 The qproc Authors
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

#pragma once

#include "qproc/channel_models.hpp"
#include "qproc/dataset_io.hpp"
#include "qproc/errors.hpp"
#include "qproc/linalg.hpp"
#include "qproc/metrics.hpp"
#include "qproc/pcn.hpp"
#include "qproc/process_fit.hpp"
#include "qproc/qst.hpp"
#include "qproc/quantum.hpp"
#include "qproc/serialization.hpp"
#include "qproc/tomography.hpp"
