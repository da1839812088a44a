#pragma once

// Central table of numeric defaults. Every tunable the pipeline uses lives
// here; the CLI and the verification suite never hard-code their own copies.
namespace pushout::defaults {

// Sampling
inline constexpr int kSamples = 4096;            // per closed curve
inline constexpr int kSamplesVerify = 65536;     // verification suite
inline constexpr int kMinSamples = 16;

// Curvature threshold below which the focal set is treated as empty
// (center of curvature at infinity). Units: 1/length.
inline constexpr double kKappaMin = 1e-9;

// Holonomy orbit detection
inline constexpr double kClosureTol = 1e-6;
inline constexpr int kOrbitMax = 10000;

// Truncation for non-closing orbits
inline constexpr int kTruncate = 500;

// Push-out geometry
inline constexpr double kWindowFactor = 2.5;     // W = factor * rho
inline constexpr int kRasterRes = 1024;
inline constexpr int kThetaSamples = 4096;

// Tube fibers
inline constexpr int kSamplesAround = 64;

// Frame transport
inline constexpr int kRenormInterval = 64;       // transport scan
inline constexpr int kPowerRenormInterval = 128; // matrix powers

// Planar-piece shooting
inline constexpr double kShootSpeedFactor = 2.0; // v0 = factor * |end - start|
inline constexpr int kShootMaxIter = 200;
inline constexpr double kShootTarget = 1e-12;    // aimed-for residual
inline constexpr double kShootResidualMax = 1e-9;

// Spike family shape
inline constexpr double kSpikeScale = 1.0;
inline constexpr double kSpikeTilt = 0.25;       // out-of-plane bump tilt, radians

}  // namespace pushout::defaults
