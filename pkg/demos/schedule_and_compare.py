"""Switch schedules and measured-sweep comparison.

Converts a phase profile to a per-channel switch schedule (rise and fall
ticks on a 360-tick period), round-trips the ticks back to phases, then
compares model predictions against a synthetic measured sweep, including
one with a deliberate one-grid-step pointing deviation.
"""

from risbeam import (
    ArrayGeometry,
    ElementPatternModel,
    ModulationWaveform,
    ReflectionPair,
    build_switch_schedule,
    compare_sweep,
    schedule_roundtrip_phases,
    synthesize_measured_sweep,
    tick_table_text,
)

F0 = 313.0
PROFILE = (0.0, 270.0, 180.0, 90.0)


def main():
    schedule = build_switch_schedule(PROFILE, F0, ticks_per_period=360)
    print("channel  rise_tick  fall_tick")
    for ch, (rise, fall) in enumerate(schedule.channels, start=1):
        print(f"{ch:7d}  {rise:9d}  {fall:9d}")
    print("round-trip phases:", schedule_roundtrip_phases(schedule))

    print()
    print("first ticks of the 4-channel level table (1 = high):")
    for line in tick_table_text(schedule).splitlines()[:8]:
        print(" ", line)

    geometry = ArrayGeometry.half_wavelength_linear(4, f_c=2.45e9)
    element = ElementPatternModel.isotropic()
    waveform = ModulationWaveform(ReflectionPair(1.0, -1.0), f0=F0)

    for shift, label in ((0.0, "exact sweep"), (10.0, "sweep shifted one grid step")):
        sweep = synthesize_measured_sweep(
            geometry, element, waveform, PROFILE, grid_step_deg=10.0, shift_plus_deg=shift
        )
        report = compare_sweep(sweep, geometry, element, waveform, PROFILE)
        print()
        print(f"{label}:")
        for entry in report.harmonics:
            status = "match" if entry.match else "MISMATCH"
            print(
                f"  m = {entry.harmonic:+d}: predicted {list(entry.predicted_dominance)}, "
                f"measured {list(entry.measured_dominance)}, {status}, "
                f"front-sector NRMS = {entry.nrms_front:.4f}"
            )


if __name__ == "__main__":
    main()
