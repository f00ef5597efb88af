"""Smoke test for the certzero Python bindings.

Build and install first:  pip install --no-build-isolation ./crates/certzero-py
Run:                      python python/smoke_test.py
"""

import math

import certzero_py as cz


def main() -> None:
    zero = cz.reference_zero(1.0, 1)
    assert abs(zero.root - 3.8317059702075123) < 1e-14
    assert zero.lower <= zero.root <= zero.upper

    e = cz.enclosure(1.0, 1)
    assert e.lower < zero.root < e.upper and e.contains(zero.root), e
    assert e.width > 0 and e.chi > 0

    v = cz.verify_zero(10.0, 3)
    assert v.passed and v.window[0] <= v.normalized_error <= v.window[1], v.normalized_error

    assert abs(cz.zeta_of_z(2.0) + 1.018104888567116) < 1e-14
    assert abs(cz.z_of_zeta(cz.zeta_of_z(7.5)) - 7.5) < 1e-11
    assert abs(cz.sigma_of_z(1.0) - 2.0 ** (-1.0 / 3.0)) < 1e-15
    assert abs(cz.zhat(1, 1.0) - 1.0 / 70.0) < 1e-16

    x = 2.0
    assert abs(cz.bessel_j(0.5, x) - math.sqrt(2 / (math.pi * x)) * math.sin(x)) < 1e-15

    rows = {r.name: r for r in cz.constant_table()}
    assert all(rows[n].passed for n in ("psi0", "kappa2", "c1")), rows

    s = cz.scan("calG2", 2000)
    assert s.decreasing and abs(s.max - 1.0130228266) < 1e-8 and len(s.values) == 2000

    try:
        cz.enclosure(0.5, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("nu < 1 accepted")

    try:
        cz.scan("p1")
    except NotImplementedError:
        pass
    else:
        raise AssertionError("p1 accepted")

    print("certzero_py smoke test passed")


if __name__ == "__main__":
    main()
