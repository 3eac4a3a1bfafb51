// gaborpr/gaborpr.hpp

// Copyright 2026 The gaborpr Authors
//
// See ../../LICENSE for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef GABORPR_GABORPR_HPP_
#define GABORPR_GABORPR_HPP_

#include "gaborpr/errors.hpp"
#include "gaborpr/io.hpp"
#include "gaborpr/metrics.hpp"
#include "gaborpr/parallel.hpp"
#include "gaborpr/quadrature.hpp"
#include "gaborpr/reconstruction.hpp"
#include "gaborpr/sampling.hpp"
#include "gaborpr/signal.hpp"
#include "gaborpr/special_functions.hpp"

#endif  // GABORPR_GABORPR_HPP_
