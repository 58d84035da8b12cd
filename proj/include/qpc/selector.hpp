// Copyright 2026 The qpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qpc::select {

enum class Paradigm { CircuitModel, OneWayQC, GlobalControl, AdiabaticQC };
enum class Scalability { Monolithic, Modular };
enum class Addressability { Local, Global };
enum class Control { Adiabatic, NonAdiabatic };

struct DeviceProfile {
  Scalability scalability;
  Addressability addressability;
  Control control;
};

/// Decision tree, asked in the order scalability, addressability, control.
/// Modular devices go to the one-way model regardless of the other answers;
/// monolithic devices with only global addressing go to global control.
Paradigm recommend(const DeviceProfile& profile);

std::string display_name(Paradigm p);
std::string key(Paradigm p);

Scalability parse_scalability(std::string_view s);
Addressability parse_addressability(std::string_view s);
Control parse_control(std::string_view s);

/// Every one of the 8 answer combinations.
std::vector<DeviceProfile> all_profiles();

/// Advisory text for devices between the monolithic and modular extremes.
std::string hybrid_note();

struct ThresholdEntry {
  std::string paradigm;
  std::string protocol;
  double low;   // equal to high for single-valued entries
  double high;
  std::string provenance;
};

/// Published fault-tolerance thresholds (error probability per operation).
const std::vector<ThresholdEntry>& threshold_table();

}  // namespace qpc::select
