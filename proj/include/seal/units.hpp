#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2025-2026 The sealsim Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Canonical internal units are SI: bits, cycles, cycles/s, seconds, meters,
// m/s, watts, joules. Config files speak the field units (Mb, GC/s, km/h,
// veh/km); everything is converted once at load time.

namespace seal::units {

inline constexpr double kBitsPerMegabit     = 1e6;
inline constexpr double kCyclesPerGigacycle = 1e9;
inline constexpr double kMetersPerKm        = 1000.0;

inline constexpr double mb_to_bits(double mb) { return mb * kBitsPerMegabit; }
inline constexpr double mbps_to_bps(double mbps) { return mbps * kBitsPerMegabit; }
inline constexpr double gcps_to_cps(double gcps) { return gcps * kCyclesPerGigacycle; }
inline constexpr double cps_to_gcps(double cps) { return cps / kCyclesPerGigacycle; }
inline constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }

// Unit cost φ is quoted per GC/s in configs; internally it multiplies cycles/s.
inline constexpr double per_gcps_to_per_cps(double v) { return v / kCyclesPerGigacycle; }

// Vehicle density: config quotes vehicles per km, internals use per meter.
inline constexpr double per_km_to_per_m(double v) { return v / kMetersPerKm; }

}  // namespace seal::units
