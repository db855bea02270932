"""Independent high-precision reference values for the unit and acceptance tests.

Evaluates the closed-form formulas directly with mpmath (50 digits), without
touching the C++ code, and writes tests/oracle_values.hpp.
Run: python3 tests/oracles/generate_oracle_values.py
"""
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50


def psi(z, v, tau):
    return (z / tau) ** v


def psi_inv(y, v, tau):
    return max(mp.mpf(1), tau * y ** (1 / mp.mpf(v))) if y > 0 else mp.mpf(1)


def a_of(z, v, tau):
    return tau ** v / v * z ** (1 - v)


def sphere_area(d):
    return 2 * mp.pi ** (mp.mpf(d) / 2) / mp.gamma(mp.mpf(d) / 2)


def norm_constant(v, tau, d):
    radial = mp.quad(lambda t: t ** (d - 1) * mp.exp(-psi(t, v, tau)), [0, tau, mp.inf])
    return 1 / (sphere_area(d) * radial)


def tail_mass(R, v, tau, d):
    c = norm_constant(v, tau, d)
    return c * sphere_area(d) * mp.quad(lambda t: t ** (d - 1) * mp.exp(-psi(t, v, tau)), [R, R + 50, mp.inf])


def default_bandwidth(n, v, tau):
    ln = mp.log(n)
    lln = mp.log(ln)
    core = psi_inv(ln, v, tau)
    if v <= 1:
        return a_of(core, v, tau) * lln ** mp.mpf(1.5) / core
    return a_of(core, v, tau) * lln ** mp.mpf(0.5)


def sequences(n, r, delta, v, tau, d):
    ln = mp.log(n)
    core = psi_inv(ln, v, tau)
    A = ln + d * mp.log(r) - mp.log(mp.log(core / r)) - delta
    B = ln + (d - 1) * mp.log(core) + mp.log(a_of(core, v, tau)) + mp.log(ln)
    return A, B, psi_inv(A, v, tau), psi_inv(B, v, tau)


def default_delta(v, tau, d):
    return max(mp.mpf(0), mp.log(d / norm_constant(v, tau, d))) + 1


def phi_at(R, v, tau, d):
    return (norm_constant(v, tau, d) * mp.exp(-psi(R, v, tau))) ** (-mp.mpf(1) / d)


def scale(kind, R, v, tau, d):
    ph = phi_at(R, v, tau, d)
    if kind == "light_tail":
        return psi_inv(mp.log(mp.e + ph), v, tau)
    if kind == "super_exp":
        return mp.log(mp.e + mp.log(1 + ph))
    if kind == "naive":
        return ph
    return mp.mpf(1)


def diagnostics(kind, n, v, tau, d):
    r = default_bandwidth(n, v, tau)
    _, _, rc, rb = sequences(n, r, default_delta(v, tau, d), v, tau, d)
    s = r * scale(kind, rc, v, tau, d)
    return (rb - rc) / s, s / rc


values = {}
values["kNormD1V1"] = norm_constant(1, 1, 1)
values["kNormD2V1"] = norm_constant(1, 1, 2)
values["kNormD2V2"] = norm_constant(2, 1, 2)
for v, tag in ((0.5, "V05"), (1, "V1"), (2, "V2")):
    for d in (1, 2):
        values[f"kNormD{d}{tag}"] = norm_constant(mp.mpf(v), 1, d)
values["kPhiOriginD2V1"] = phi_at(0, 1, 1, 2)
values["kPhiD1V1AtTwo"] = phi_at(2, 1, 1, 1)
values["kTailMassD2V1At5"] = tail_mass(5, 1, 1, 2)
values["kLightTailOriginD2V1"] = scale("light_tail", 0, 1, 1, 2)
A, B, rc, rb = sequences(mp.e ** 20, mp.mpf("0.1"), 2, 1, 1, 2)
values["kSeqAn"] = A
values["kSeqBn"] = B
ph = phi_at(rc, 1, 1, 2)
values["kSeqNoiseKillingLightTail"] = (rb - rc) / (mp.mpf("0.1") * psi_inv(mp.log(mp.e + ph), 1, 1))
values["kBandwidthV1"] = default_bandwidth(mp.e ** (mp.e ** 4), 1, 1)
values["kBandwidthV2"] = default_bandwidth(mp.e ** (mp.e ** 4), 2, 1)
values["kEquilateralThreshold"] = 1 / mp.sqrt(3)
values["kRadiusD2V1"] = mp.findroot(lambda t: 1 - (1 + t) * mp.exp(-t) - (1 - 2 / mp.e), 1)
n = mp.mpf(10) ** 4
r = default_bandwidth(n, 1, 1)
_, _, _, rb = sequences(n, r, default_delta(1, 1, 2), 1, 1, 2)
values["kVoidProbabilityN1e4"] = mp.exp(-n * tail_mass(rb, 1, 1, 2))
grid = [mp.mpf(10) ** k for k in (3, 6, 9, 12)]
for i, g in enumerate(grid):
    nk, nt = diagnostics("light_tail", g, 1, 1, 2)
    values[f"kLightTailNoiseKilling{i}"] = nk
    values[f"kLightTailNontriviality{i}"] = nt
    nk, nt = diagnostics("super_exp", g, 2, 1, 2)
    values[f"kSuperExpNoiseKilling{i}"] = nk
    values[f"kSuperExpNontriviality{i}"] = nt
    _, nt = diagnostics("naive", g, 1, 1, 2)
    values[f"kNaiveNontriviality{i}"] = nt
for v, tag in ((1, "V1"), (2, "V2")):
    n = mp.mpf(8000)
    r = default_bandwidth(n, v, 1)
    _, _, _, rb = sequences(n, r, default_delta(v, 1, 2), v, 1, 2)
    values[f"kVoidProbabilityN8000{tag}"] = mp.exp(-n * tail_mass(rb, v, 1, 2))

lines = [
    "#pragma once",
    "",
    "// Generated by tests/oracles/generate_oracle_values.py (mpmath, 50 digits).",
    "// Do not edit by hand.",
    "",
    "namespace cracklelab::oracle {",
    "",
]
for key, value in values.items():
    lines.append(f"inline constexpr double {key} = {mp.nstr(value, 20)};")
lines += ["", "}  // namespace cracklelab::oracle", ""]
out = Path(__file__).resolve().parent.parent / "oracle_values.hpp"
out.write_text("\n".join(lines))
print(out)
