#!/usr/bin/env python3
"""Writes the synthetic F tables bundled under data/synthetic/.

No middle-Z reduced self-energy tables are bundled with this project, so the
sample tables are generated from the expansion

    F(x) = A40 + x^2 (A61 ln(x^-2) + A60) + x^3 G7(x),   x = Z alpha,

with a polynomial remainder G7(x) = g0 + g1 x + g2 x^2. Every value is the
model value itself; the quoted sigma_F is REL_SIGMA * |F|, the typical
relative precision of middle-Z numerical self energies. The model's exact
energy at Z = 1 is written in each table header so extrapolations can be
checked against it.

Usage: gen_synthetic_tables.py [DATA_DIR]
"""
import pathlib
import sys

from mpmath import mp, mpf, log, pi

mp.dps = 40

ALPHA = mpf("7.2973525693e-3")
ME_C2_HZ = mpf("1.2355899638189e20")
CONSTANTS_LABEL = "CODATA 2018"
REL_SIGMA = mpf("1e-5")

# state, (n, A40, A61, A60), (g0, g1, g2), Z values, source of coefficients
MODELS = [
    ("4P1/2", (4, mpf("-0.11072680720255133"), mpf(499) / 720, mpf("-1.195688142")),
     (mpf("-1.25"), mpf("3.5"), mpf("-2.0")), range(10, 61, 5), "literature"),
    ("4D5/2", (4, mpf("0.0388"), mpf(1344) / 120960, mpf("0.02")),
     (mpf("-0.02"), mpf("0"), mpf("0")), range(20, 61, 5), "synthetic"),
    ("5F7/2", (5, mpf("0.0192"), mpf(2016) / 1134000, mpf("0.008")),
     (mpf("-0.02"), mpf("0.05"), mpf("0")), range(20, 61, 5), "synthetic"),
    ("5G9/2", (5, mpf("0.0115"), mpf(1760) / 4158000, mpf("0.004")),
     (mpf("-0.005"), mpf("0.01"), mpf("0")), range(20, 61, 5), "synthetic"),
]


def sig17(x):
    return mp.nstr(x, 17, strip_zeros=True, min_fixed=-5, max_fixed=6)


def f_model(x, coeffs, g):
    _, a40, a61, a60 = coeffs
    g7 = g[0] + g[1] * x + g[2] * x * x
    return a40 + x * x * (a61 * log(x ** -2) + a60) + x ** 3 * g7


def main():
    data_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else
                            pathlib.Path(__file__).resolve().parent.parent / "data")
    out_dir = data_dir / "synthetic"
    out_dir.mkdir(parents=True, exist_ok=True)

    coeff_lines = [
        "# Synthetic coefficients for the bundled demonstration tables. These are",
        "# NOT literature values; they only shape smooth model F(Z) curves.",
        "# state  A40 sA40  A61 sA61  A60 sA60  GSE0 sGSE0  \"source\"",
    ]
    for state, coeffs, g, zs, origin in MODELS:
        n = coeffs[0]
        x1 = ALPHA
        f1 = f_model(x1, coeffs, g)
        e1 = ALPHA / pi * x1 ** 4 / n ** 3 * ME_C2_HZ * f1
        lines = [
            f"# Synthetic table: F = A40 + x^2 (A61 ln x^-2 + A60) + x^3 G7(x),",
            f"# G7(x) = {sig17(g[0])} + ({sig17(g[1])}) x + ({sig17(g[2])}) x^2, x = Z alpha;",
            f"# coefficients: {origin}; sigma_F = 1e-5 |F| (values are exact model values).",
            f"# model F(Z=1) = {sig17(f1)}",
            f"# model E(Z=1) = {sig17(e1)} Hz",
            f"state: {state}",
            f"constants: {CONSTANTS_LABEL}",
            "# Z F sigma_F",
        ]
        for z in zs:
            f = f_model(z * ALPHA, coeffs, g)
            lines.append(f"{z} {sig17(f)} {sig17(REL_SIGMA * abs(f))}")
        name = state.replace("/", "_") + ".txt"
        (out_dir / name).write_text("\n".join(lines) + "\n")

        if origin == "synthetic":
            _, a40, a61, a60 = coeffs
            coeff_lines.append(
                f"{state}  {sig17(a40)} 0  {sig17(a61)} 0  {sig17(a60)} 0  "
                f"{sig17(a60)} 1e-4  \"synthetic demonstration values\"")

    (data_dir / "coefficients_synthetic.txt").write_text("\n".join(coeff_lines) + "\n")


if __name__ == "__main__":
    main()
