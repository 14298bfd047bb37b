from fractions import Fraction

from hypothesis import settings, strategies as st

from sympcliff.poisson import QuadPoly
from sympcliff.quaternion import Quaternion, Vector3

settings.register_profile("default", deadline=None)
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
quaternions = st.builds(Quaternion.from_components, rationals, rationals, rationals, rationals)
vectors = st.builds(Vector3, rationals, rationals, rationals)
quads = st.builds(QuadPoly, rationals, rationals, rationals)


def stereo_unit(a, b):
    """Rational point on S^2."""
    d = 1 + a * a + b * b
    return Vector3(2 * a / d, 2 * b / d, (a * a + b * b - 1) / d)


unit_vectors = st.builds(stereo_unit, rationals, rationals)


# acceptance criterion -> list of (ok, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[key]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts)
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
