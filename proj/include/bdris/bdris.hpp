// bdris - scattering matrix design for beyond-diagonal RIS architectures
// Copyright (C) 2026 the bdris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "bdris/arch.hpp"
#include "bdris/beamform.hpp"
#include "bdris/channel.hpp"
#include "bdris/errors.hpp"
#include "bdris/gain_opt.hpp"
#include "bdris/io.hpp"
#include "bdris/lbfgs.hpp"
#include "bdris/linalg.hpp"
#include "bdris/network.hpp"
#include "bdris/rng.hpp"
#include "bdris/sosup.hpp"
#include "bdris/sweep.hpp"
#include "bdris/takagi.hpp"
