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

#include "qpc/selector.hpp"

#include "qpc/types.hpp"

namespace qpc::select {

Paradigm recommend(const DeviceProfile& profile) {
  if (profile.scalability == Scalability::Modular) return Paradigm::OneWayQC;
  if (profile.addressability == Addressability::Global) return Paradigm::GlobalControl;
  return profile.control == Control::Adiabatic ? Paradigm::AdiabaticQC : Paradigm::CircuitModel;
}

std::string display_name(Paradigm p) {
  switch (p) {
    case Paradigm::CircuitModel:
      return "Circuit Model";
    case Paradigm::OneWayQC:
      return "One-way QC";
    case Paradigm::GlobalControl:
      return "Global Control";
    case Paradigm::AdiabaticQC:
      return "Adiabatic QC";
  }
  return {};
}

std::string key(Paradigm p) {
  switch (p) {
    case Paradigm::CircuitModel:
      return "circuit";
    case Paradigm::OneWayQC:
      return "oneway";
    case Paradigm::GlobalControl:
      return "global";
    case Paradigm::AdiabaticQC:
      return "adiabatic";
  }
  return {};
}

Scalability parse_scalability(std::string_view s) {
  if (s == "monolithic") return Scalability::Monolithic;
  if (s == "modular") return Scalability::Modular;
  throw Error("scalability must be monolithic or modular");
}

Addressability parse_addressability(std::string_view s) {
  if (s == "local") return Addressability::Local;
  if (s == "global") return Addressability::Global;
  throw Error("addressability must be local or global");
}

Control parse_control(std::string_view s) {
  if (s == "adiabatic") return Control::Adiabatic;
  if (s == "non-adiabatic") return Control::NonAdiabatic;
  throw Error("control must be adiabatic or non-adiabatic");
}

std::vector<DeviceProfile> all_profiles() {
  std::vector<DeviceProfile> out;
  for (auto s : {Scalability::Monolithic, Scalability::Modular}) {
    for (auto a : {Addressability::Local, Addressability::Global}) {
      for (auto c : {Control::Adiabatic, Control::NonAdiabatic}) out.push_back({s, a, c});
    }
  }
  return out;
}

std::string hybrid_note() {
  return "Note: devices between monolithic and modular scalability, or mixing adiabatic and "
         "gate-based control, may suit a hybrid architecture (e.g. circuit model with "
         "QCA-style transport, one-way model linking circuit-model modules, or circuit-model "
         "gates run adiabatically).";
}

const std::vector<ThresholdEntry>& threshold_table() {
  static const std::vector<ThresholdEntry> table{
      {"circuit", "early concatenated-code estimates", 1e-6, 1e-6,
       "kitaev97, preskill98, knill98, aharonov99"},
      {"circuit", "Gottesman stabilizer-code estimate", 1e-4, 1e-4, "gottesman97"},
      {"circuit", "Steane threshold", 3e-3, 3e-3, "steane03"},
      {"circuit", "Knill post-selected scheme", 1e-2, 1e-2, "knill04b"},
      {"circuit", "nearest-neighbour interactions only", 1e-5, 1e-4, "svore:022317"},
      {"global", "globally controlled array fault tolerance", 1e-11, 1e-11,
       "kay-2005, kay-2007"},
      {"oneway", "2D cluster state (Raussendorf-Harrington)", 7.5e-3, 7.5e-3,
       "raussendorf06, raussendorf07, raussendorf07b"},
      {"communication", "BB84 key distribution (Shor-Preskill)", 0.11, 0.11,
       "shor00"},
  };
  return table;
}

}  // namespace qpc::select
