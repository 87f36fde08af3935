"""Steering the +1st and -1st harmonic beams of a 1x4 modulated array.

For each target azimuth from 50 to 130 degrees, synthesizes the quantized
progressive phase profile, sweeps the far-field pattern and prints the
dominance directions of both first-order harmonics.  The two harmonics
steer to mirror-image azimuths about broadside.
"""

import numpy as np

from risbeam import (
    ArrayGeometry,
    ElementPatternModel,
    ModulationWaveform,
    ReflectionPair,
    SteeringRequest,
    dominance_direction,
    pattern_sweep,
    progressive_phase_profile,
)

F0 = 313.0


def main():
    geometry = ArrayGeometry.half_wavelength_linear(4, f_c=2.45e9)
    element = ElementPatternModel.isotropic()
    waveform = ModulationWaveform(ReflectionPair(1.0, -1.0), f0=F0)

    print("target   profile psi (deg)              +1 dominance      -1 dominance")
    for target in np.arange(50.0, 131.0, 10.0):
        request = SteeringRequest(target, 1, geometry, resolution_deg=1.0)
        profile = progressive_phase_profile(request)
        plus = dominance_direction(pattern_sweep(geometry, element, profile, waveform, 1, 1.0))
        minus = dominance_direction(pattern_sweep(geometry, element, profile, waveform, -1, 1.0))
        psi = ", ".join(f"{p:5.1f}" for p in profile.phases_deg)
        print(f"{target:5.0f}    [{psi}]    {plus}    {minus}")

    print()
    print("pattern cut for the 60-degree profile (front half-plane, 10 deg grid):")
    request = SteeringRequest(60.0, 1, geometry, resolution_deg=1.0)
    profile = progressive_phase_profile(request)
    pattern = pattern_sweep(geometry, element, profile, waveform, 1, 10.0)
    front = (pattern.azimuth_deg >= 0.0) & (pattern.azimuth_deg <= 180.0)
    for az, mag in zip(pattern.azimuth_deg[front], pattern.magnitude[front]):
        bar = "#" * int(round(40 * mag))
        print(f"  {az:5.0f} deg  {mag:6.3f}  {bar}")


if __name__ == "__main__":
    main()
