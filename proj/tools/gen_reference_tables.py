#!/usr/bin/env python3
"""Generate high-precision reference values for the complex error function tests.

Values are computed with mpmath at 50 significant digits and frozen into
include/qdecay/detail/erfc_reference_table.inc as a C++ array.  Regenerate with:

    python3 tools/gen_reference_tables.py > include/qdecay/detail/erfc_reference_table.inc

mpmath's erfc uses independent algorithms (hypergeometric series and
asymptotic continued fractions at arbitrary precision), so it serves as an
oracle for the double-precision implementation in include/qdecay.
"""

import mpmath as mp

mp.mp.dps = 50


def emit(z):
    v = mp.erfc(z)
    return "    {%.17e, %.17e, %.17e, %.17e}," % (
        float(z.real), float(z.imag), float(v.real), float(v.imag))


def main():
    print("// Generated by tools/gen_reference_tables.py (mpmath %s, dps=50)."
          % mp.__version__)
    print("// Layout: {re(z), im(z), re(erfc(z)), im(erfc(z))}")
    rows = []
    # 41x41 grid over [-10,10]^2, step 0.5
    for i in range(41):
        for j in range(41):
            x = mp.mpf(i) / 2 - 10
            y = mp.mpf(j) / 2 - 10
            rows.append(emit(mp.mpc(x, y)))
    # off-grid spot checks, including points near the real axis and large |z|
    extra = [
        (0.3, 1e-3), (3.7, 1e-4), (7.1, -1e-5), (0.25, 0.25),
        (1.0, 1.0), (-1.0, 1.0), (12.0, 12.0), (-12.0, -12.0),
        (15.5, 0.1), (0.1, 15.5), (19.0, -19.0), (5.0, -5.0),
        (2.125, -6.875), (-9.25, 3.75), (13.0, -2.0), (0.0, 20.0),
    ]
    for (x, y) in extra:
        rows.append(emit(mp.mpc(x, y)))
    print("static constexpr ErfcReference kErfcReference[%d] = {" % len(rows))
    for r in rows:
        print(r)
    print("};")


if __name__ == "__main__":
    main()
