"""Reflection-coefficient contrast of a two-state switched load.

Computes the per-state reflection coefficients at the 2.45 GHz reference
operating point, then reports the differential magnitude, phase separation
and per-state reflection losses that determine modulation quality.
"""

import numpy as np

from risbeam import ReflectionPair, modulation_metrics, reflection_coefficient

Z_ANTENNA = 46.85 - 0.8j
Z_LOAD_ON = 2.99 + 4.02j
Z_LOAD_OFF = 96.27 - 508.72j


def main():
    g_on = reflection_coefficient(Z_LOAD_ON, Z_ANTENNA)
    g_off = reflection_coefficient(Z_LOAD_OFF, Z_ANTENNA)
    print("state ON :  gamma = {:.4f} at {:7.2f} deg".format(abs(g_on), np.degrees(np.angle(g_on))))
    print("state OFF:  gamma = {:.4f} at {:7.2f} deg".format(abs(g_off), np.degrees(np.angle(g_off))))

    metrics = modulation_metrics(ReflectionPair(g_on, g_off))
    print()
    print(f"differential magnitude |G_on - G_off| = {metrics.differential_magnitude:.4f}")
    print(f"signed phase difference               = {metrics.phase_difference_signed_deg:.2f} deg")
    print(f"phase separation (folded)             = {metrics.phase_separation_deg:.2f} deg")
    print(f"reflection loss ON / OFF              = {metrics.loss_on_db:.2f} / {metrics.loss_off_db:.2f} dB")

    band = abs(metrics.phase_separation_deg - 180.0) <= 12.0
    print()
    print("phase separation within 180 +/- 12 deg:", "yes" if band else "no")


if __name__ == "__main__":
    main()
